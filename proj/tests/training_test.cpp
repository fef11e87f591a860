#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/training.hpp"
#include "forumcrawl/xpath.hpp"

using namespace forumcrawl;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_fixture(const std::string& rel) {
  std::ifstream in(std::string(FORUMCRAWL_TEST_DATA) + "/" + rel, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::StoreError;
}

std::string section_page(int page, int pages, bool extra_nav = false) {
  std::string s = "<html><head><title>News</title></head><body><a class=\"home\" href=\"/\">Home</a>"
                  "<div class=\"threads\">";
  for (int i = 1; i <= 3; ++i) {
    int id = (page - 1) * 3 + i;
    s += "<div class=\"row\"><span class=\"title\"><a href=\"/threads/" + std::to_string(id) + "/\">Thread " +
         std::to_string(id) + "</a></span></div>";
  }
  s += "</div><div class=\"pageNav\">";
  if (extra_nav && page > 1) s += "<a class=\"pageNav-jump--prev\" href=\"page-" + std::to_string(page - 1) + "\">Prev</a>";
  if (page < pages) s += "<a class=\"pageNav-jump--next\" href=\"page-" + std::to_string(page + 1) + "\">Next</a>";
  return s + "</div></body></html>";
}

std::string thread_page(int page, int pages) {
  std::string s =
      "<html><head><title>Thread one</title></head><body><a class=\"home\" href=\"/\">Home</a>"
      "<ul class=\"breadcrumbs\"><li><a href=\"/forums/10/\">News</a></li></ul>"
      "<h1 class=\"p-title-value\">Thread one</h1><div class=\"posts\">";
  for (int i = 1; i <= 2; ++i) {
    std::string n = std::to_string((page - 1) * 2 + i);
    s += "<article class=\"message\"><div class=\"message-user\"><a class=\"username\">user" + n +
         "</a><dl><dt>Messages</dt><dd>" + n + "0</dd></dl></div><div class=\"message-main\">"
         "<time data-original-title=\"Original post time\">Jan " + n + ", 2024</time>"
         "<div class=\"post-message flex-fill\">Post body " + n + "</div></div></article>";
  }
  s += "</div><div class=\"pageNav\">";
  if (page < pages) s += "<a class=\"pageNav-jump--next\" href=\"page-" + std::to_string(page + 1) + "\">Next</a>";
  return s + "</div></body></html>";
}

/// Temporary forum with login, home, one section (3 pages), a tagged
/// subsection and a two-page thread.
struct TrainSite {
  fs::path root;
  FixtureManifest manifest;

  TrainSite() {
    root = fs::temp_directory_path() / ("forumcrawl_train_" + std::to_string(::getpid()));
    fs::remove_all(root);
    write(root / "login/index.html",
          "<html><head><title>Log in</title></head><body><a class=\"home\" href=\"/\">Home</a>"
          "<form action=\"/login/login\" method=\"post\">"
          "<input type=\"text\" name=\"login\" autocomplete=\"username\">"
          "<input type=\"password\" name=\"password\">"
          "<button type=\"submit\" class=\"button--primary\">Log in</button></form></body></html>");
    write(root / "index.html", read_fixture("pages/xss_home.html"));
    for (int p = 1; p <= 3; ++p)
      write(root / (p == 1 ? std::string("forums/10/index.html") : "forums/10/page-" + std::to_string(p) + ".html"),
            section_page(p, 3));
    write(root / "forums/11/index.html", read_fixture("pages/tagged_threads.html"));
    write(root / "threads/1/index.html", thread_page(1, 2));
    write(root / "threads/1/page-2.html", thread_page(2, 2));
    manifest.base_url = "http://forum.test";
    manifest.login = FixtureLogin{"/login/", "/login/login", "analyst", "pw", "/", "login", "password"};
  }
  ~TrainSite() { fs::remove_all(root); }

  std::shared_ptr<FixtureSite> site() {
    write(root / "manifest.json", manifest_to_json(manifest).dump(2));
    return std::make_shared<FixtureSite>(root);
  }

  CrawlConfiguration config(bool with_subsection = true) const {
    CrawlConfiguration c;
    c.forum_id = "train";
    c.urls.login = "http://forum.test/login/";
    c.urls.home = "http://forum.test/";
    c.urls.section = "http://forum.test/forums/10/";
    if (with_subsection) c.urls.subsection = "http://forum.test/forums/11/";
    c.urls.thread = "http://forum.test/threads/1/";
    c.credentials = {"analyst", "pw"};
    return c;
  }
};

std::vector<AbsolutePath> paths(const PageRecord& p, const std::string& xpath) {
  std::vector<AbsolutePath> out;
  for (const auto& n : evaluate_xpath(*p.snapshot, xpath)) out.push_back(absolute_path(*p.snapshot, n));
  return out;
}

/// Matches of `xpath` whose text is one of `texts`.
std::vector<AbsolutePath> paths(const PageRecord& p, const std::string& xpath, std::set<std::string> texts) {
  std::vector<AbsolutePath> out;
  for (const auto& n : evaluate_xpath(*p.snapshot, xpath))
    if (texts.count(text_content(n).text)) out.push_back(absolute_path(*p.snapshot, n));
  return out;
}

const Locator& locator_of(const std::map<LabelKind, InferenceResult>& results, LabelKind label) {
  return std::get<Locator>(results.at(label));
}

void train_login(TrainingSession& s) {
  const auto& p = s.load_page(PageType::Login);
  auto r = s.submit_labels(PageType::Login, {{LabelKind::UsernameField, paths(p, "//input[@name='login']")},
                                             {LabelKind::PasswordField, paths(p, "//input[@name='password']")},
                                             {LabelKind::LoginButton, paths(p, "//button")}});
  ASSERT_TRUE(s.confirm(PageType::Login).passed);
}

void train_home(TrainingSession& s) {
  const auto& p = s.load_page(PageType::Home);
  s.submit_labels(PageType::Home, {{LabelKind::HomeLink, paths(p, "//a[@id='nav']")},
                                   {LabelKind::SectionLink, paths(p, "//h3/a", {"News", "Lounge"})}});
  ASSERT_TRUE(s.confirm(PageType::Home).passed);
}

void train_section(TrainingSession& s) {
  const auto& p = s.load_page(PageType::Section);
  s.submit_labels(PageType::Section, {{LabelKind::ThreadLink, paths(p, "//span[@class='title']/a")},
                                      {LabelKind::NextPage, paths(p, "//a[@class='pageNav-jump--next']")}});
  ASSERT_TRUE(s.confirm(PageType::Section).passed);
}

void train_thread(TrainingSession& s) {
  const auto& p = s.load_page(PageType::Thread);
  s.submit_labels(PageType::Thread, {{LabelKind::ThreadTitle, paths(p, "//h1")},
                                     {LabelKind::PostAuthor, paths(p, "//a[@class='username']")},
                                     {LabelKind::PostDate, paths(p, "//time")},
                                     {LabelKind::PostContent, paths(p, "//div[@class='post-message flex-fill']")},
                                     {LabelKind::NextPage, paths(p, "//a[@class='pageNav-jump--next']")}});
  s.set_date_format(PageType::Thread, LabelKind::PostDate, "%b %d, %Y");
  ASSERT_TRUE(s.confirm(PageType::Thread).passed);
}

}  // namespace

TEST(TrainingQueue, OrderAndOptionalSubsection) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession full(t.config(), a);
  ASSERT_EQ(full.pages().size(), 5u);
  std::vector<PageType> order;
  for (const auto& p : full.pages()) order.push_back(p.type);
  EXPECT_EQ(order, (std::vector<PageType>{PageType::Login, PageType::Home, PageType::Section, PageType::Subsection,
                                          PageType::Thread}));
  TrainingSession four(t.config(false), a);
  EXPECT_EQ(four.pages().size(), 4u);
  EXPECT_EQ(four.current_page(), PageType::Login);

  auto c = t.config();
  c.urls.section.clear();
  try {
    TrainingSession bad(c, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingUrl);
    EXPECT_NE(e.message().find(to_string(PageType::Section)), std::string::npos);
  }
}

TEST(TrainingLabels, LoginFieldsAreS1AndWrongStateRejected) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  EXPECT_EQ(code_of([&] { s.submit_labels(PageType::Login, {}); }), ErrorCode::WrongPageState);
  const auto& p = s.load_page(PageType::Login);
  EXPECT_EQ(code_of([&] { s.submit_labels(PageType::Login, {{LabelKind::PostAuthor, paths(p, "//input")}}); }),
            ErrorCode::InvalidLabelForPage);
  auto r = s.submit_labels(PageType::Login, {{LabelKind::UsernameField, paths(p, "//input[@name='login']")},
                                             {LabelKind::PasswordField, paths(p, "//input[@name='password']")},
                                             {LabelKind::LoginButton, paths(p, "//button")},
                                             {LabelKind::HomeLink, {}}});
  ASSERT_EQ(r.size(), 3u);
  for (auto label : {LabelKind::UsernameField, LabelKind::PasswordField, LabelKind::LoginButton})
    EXPECT_EQ(locator_of(r, label).strategy, Strategy::RobustAttribute) << to_string(label);
  EXPECT_EQ(s.page(PageType::Login).state, PageState::Verifying);
  auto gate = s.confirm(PageType::Login);
  EXPECT_TRUE(gate.passed);
  EXPECT_EQ(gate.rounds, 1);
  EXPECT_EQ(s.page(PageType::Login).state, PageState::Done);
  EXPECT_EQ(code_of([&] { s.load_page(PageType::Login); }), ErrorCode::WrongPageState);
}

TEST(TrainingLabels, MultiNodeSkipsS1AndIgnoreNarrows) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Home);
  auto r = s.submit_labels(PageType::Home, {{LabelKind::SubsectionLink, paths(p, "//h3/a", {"News", "Help"})}});
  const auto& loc = locator_of(r, LabelKind::SubsectionLink);
  EXPECT_EQ(loc.strategy, Strategy::AbsoluteCommon);
  ASSERT_EQ(resolve(*p.snapshot, loc).size(), 8u);

  auto unwanted = paths(p, "//h3/a", {"Lounge", "Tools", "Reviews", "Market", "Guides", "Archive"});
  ASSERT_EQ(unwanted.size(), 6u);
  r = s.correct_labels(PageType::Home, IgnoreNodes{LabelKind::SubsectionLink, unwanted});
  EXPECT_EQ(locator_of(r, LabelKind::SubsectionLink).ignore.size(), 6u);
  EXPECT_EQ(resolve(*p.snapshot, locator_of(r, LabelKind::SubsectionLink)).size(), 2u);

  s.correct_labels(PageType::Home, ResetPage{});
  EXPECT_EQ(s.page(PageType::Home).state, PageState::Labeling);
  EXPECT_TRUE(s.page(PageType::Home).assignments.empty());
  EXPECT_TRUE(s.page(PageType::Home).results.empty());
}

TEST(TrainingLabels, OvermatchEscalatesToManual) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Subsection);
  LabelAssignments first{{LabelKind::ThreadLink,
                          {AbsolutePath::parse("/html[1]/body[1]/div[1]/div[1]/div[2]/div[1]/a[1]"),
                           AbsolutePath::parse("/html[1]/body[1]/div[1]/div[3]/div[2]/div[1]/a[2]")}}};
  auto r = s.submit_labels(PageType::Subsection, first);
  EXPECT_EQ(resolve(*p.snapshot, locator_of(r, LabelKind::ThreadLink)).size(), 23u);

  EXPECT_EQ(code_of([&] { s.submit_manual_xpath(PageType::Subsection, LabelKind::ThreadLink, "//a"); }),
            ErrorCode::WrongPageState);
  for (int i = 0; i < 4 && std::holds_alternative<Locator>(r.at(LabelKind::ThreadLink)); ++i)
    r = s.correct_labels(PageType::Subsection, RetrainLabels{{LabelKind::ThreadLink}});
  ASSERT_TRUE(std::holds_alternative<NeedsManual>(r.at(LabelKind::ThreadLink)));
  EXPECT_EQ(std::get<NeedsManual>(r.at(LabelKind::ThreadLink)).trail.back().code, ErrorCode::NothingToEscalate);
  EXPECT_EQ(code_of([&] { s.confirm(PageType::Subsection); }), ErrorCode::WrongPageState);

  EXPECT_EQ(code_of([&] { s.submit_manual_xpath(PageType::Subsection, LabelKind::ThreadLink, "//nav[@x='y']"); }),
            ErrorCode::NoMatch);
  EXPECT_EQ(code_of([&] { s.submit_manual_xpath(PageType::Subsection, LabelKind::ThreadLink, "//a[last()]"); }),
            ErrorCode::UnsupportedSyntax);
  auto manual = s.submit_manual_xpath(PageType::Subsection, LabelKind::ThreadLink, "//*[@data-xf-init=\"preview-tooltip\"]");
  EXPECT_EQ(manual.strategy, Strategy::Manual);
  EXPECT_EQ(resolve(*p.snapshot, manual).size(), 20u);
  auto gate = s.confirm(PageType::Subsection);
  EXPECT_TRUE(gate.passed);
  EXPECT_EQ(s.page(PageType::Subsection).state, PageState::Done);
}

TEST(TrainingLabels, ManualExpressionsForThreadFields) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Thread);
  auto date = s.submit_manual_xpath(PageType::Thread, LabelKind::PostDate, "//*[@data-original-title='Original post time']");
  EXPECT_EQ(resolve(*p.snapshot, date).size(), 2u);
  auto content = s.submit_manual_xpath(
      PageType::Thread, LabelKind::PostContent,
      "//div[contains(concat(' ',normalize-space(@class),' '),' flex-fill ')]");
  EXPECT_EQ(resolve(*p.snapshot, content).size(), 2u);
  EXPECT_EQ(s.page(PageType::Thread).state, PageState::Verifying);
}

// Retraining one label leaves every other label's locator untouched.
TEST(TrainingProperty, LabelIndependence) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Thread);
  std::vector<std::pair<LabelKind, std::string>> labels = {
      {LabelKind::ThreadTitle, "//h1"}, {LabelKind::PostAuthor, "//a[@class='username']"},
      {LabelKind::PostDate, "//time"}, {LabelKind::PostContent, "//div[@class='post-message flex-fill']"},
      {LabelKind::AuthorPostCount, "//dd"}, {LabelKind::HomeLink, "//a[@class='home']"}};
  LabelAssignments assignments;
  for (const auto& [label, xp] : labels) assignments[label] = paths(p, xp);
  auto before = s.submit_labels(PageType::Thread, assignments);
  std::mt19937 rng(11);
  for (int k = 0; k < 12; ++k) {
    auto label = labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)].first;
    auto after = s.correct_labels(PageType::Thread, RetrainLabels{{label}});
    for (const auto& [other, result] : before)
      if (other != label) EXPECT_EQ(after.at(other), result) << to_string(other);
    before = after;
  }
}

TEST(TrainingGate, RandomizedIdsEscalateToS2) {
  TrainSite t;
  write(t.root / "rand.html",
        "<html><body><div class=\"nav\"><div id=\"{{XF_UID}}\">News</div>"
        "<div id=\"{{XF_UID}}\">Lounge</div></div></body></html>");
  t.manifest.behaviors.push_back({FixtureBehavior::Kind::RerandomizeIds, "/rand.html", 1, ErrorCode::NetworkError, {}, {}, 0});
  FixtureAdapter a(t.site());
  auto c = t.config();
  c.urls.home = "http://forum.test/rand.html";
  std::vector<std::string> prompts;
  TrainingSession s(c, a, [&](PromptKind kind, const std::string& q) {
    EXPECT_EQ(kind, PromptKind::ElementStillVisible);
    prompts.push_back(q);
    return std::string("Yes\n");
  });
  const auto& p = s.load_page(PageType::Home);
  auto r = s.submit_labels(PageType::Home, {{LabelKind::SectionLink, paths(p, "//div", {"News"})}});
  ASSERT_EQ(locator_of(r, LabelKind::SectionLink).strategy, Strategy::RobustAttribute);
  EXPECT_NE(locator_of(r, LabelKind::SectionLink).expr.canonical().find("@id"), std::string::npos);
  auto gate = s.confirm(PageType::Home);
  EXPECT_TRUE(gate.passed);
  EXPECT_EQ(gate.rounds, 2);
  EXPECT_EQ(prompts.size(), 1u);
  EXPECT_EQ(locator_of(s.page(PageType::Home).results, LabelKind::SectionLink).strategy, Strategy::AbsoluteCommon);
}

TEST(TrainingGate, VanishingElementEndsInManualOrAcceptedAbsent) {
  for (std::string answer : {"yes", "no"}) {
    TrainSite t;
    write(t.root / "vanish.html",
          "<html><body><div class=\"nav\"><a href=\"/forums/10/\">News</a></div>"
          "<p><span class=\"gone\">X</span></p></body></html>");
    t.manifest.behaviors.push_back({FixtureBehavior::Kind::MutateAfterVisit, "/vanish.html", 1, ErrorCode::NetworkError,
                                    {}, {{"<p><span class=\"gone\">X</span></p>", ""}}, 0});
    FixtureAdapter a(t.site());
    auto c = t.config();
    c.urls.home = "http://forum.test/vanish.html";
    int asked = 0;
    TrainingSession s(c, a, [&](PromptKind, const std::string&) {
      ++asked;
      return answer;
    });
    const auto& p = s.load_page(PageType::Home);
    s.submit_labels(PageType::Home, {{LabelKind::SectionLink, paths(p, "//span[@class='gone']")},
                                     {LabelKind::SubsectionLink, paths(p, "//a", {"News"})}});
    auto gate = s.confirm(PageType::Home);
    const auto& rec = s.page(PageType::Home);
    if (answer == "yes") {
      EXPECT_FALSE(gate.passed);
      EXPECT_LE(gate.rounds, kMaxGateRounds);
      EXPECT_EQ(rec.state, PageState::Verifying);
      EXPECT_TRUE(std::holds_alternative<NeedsManual>(rec.results.at(LabelKind::SectionLink)));
      EXPECT_TRUE(std::holds_alternative<Locator>(rec.results.at(LabelKind::SubsectionLink)));
    } else {
      EXPECT_TRUE(gate.passed);
      EXPECT_EQ(asked, 1);
      EXPECT_EQ(rec.state, PageState::Done);
      EXPECT_TRUE(rec.accepted_absent.count(LabelKind::SectionLink));
    }
  }
}

TEST(TrainingNavigation, ThreePageSectionPasses) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  train_section(s);
  const auto& notes = s.page(PageType::Section).notes;
  EXPECT_NE(std::find(notes.begin(), notes.end(), "all locators resolve on the next page"), notes.end());
}

TEST(TrainingNavigation, NavButtonCountVariesOnPageTwo) {
  TrainSite t;
  for (int p = 1; p <= 3; ++p)
    write(t.root / (p == 1 ? std::string("forums/10/index.html") : "forums/10/page-" + std::to_string(p) + ".html"),
          section_page(p, 3, true));
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Section);
  s.submit_labels(PageType::Section, {{LabelKind::ThreadLink, paths(p, "//span[@class='title']/a")},
                                      {LabelKind::NextPage, paths(p, "//a[@class='pageNav-jump--next']")}});
  EXPECT_TRUE(s.confirm(PageType::Section).passed);
  auto next = std::get<Locator>(s.page(PageType::Section).results.at(LabelKind::NextPage));
  // Page 2 carries Prev before Next: the indexed path no longer names Next.
  auto page2 = a.open("http://forum.test/forums/10/page-2");
  auto indexed = Locator{XPathExpr::parse("/html[1]/body[1]/div[2]/a[1]"), Strategy::Manual, {}, {}};
  auto dropped = Locator{XPathExpr::parse("/html[1]/body[1]/div[2]/a[@class='pageNav-jump--next']"), Strategy::Manual, {}, {}};
  EXPECT_EQ(text_content(resolve(page2.snapshot, indexed).front()).text, "Prev");
  EXPECT_EQ(text_content(resolve(page2.snapshot, dropped).front()).text, "Next");
  EXPECT_EQ(text_content(resolve(page2.snapshot, next).front()).text, "Next");
}

TEST(TrainingNavigation, MissingOnNextPageReopensVerifying) {
  TrainSite t;
  write(t.root / "forums/10/page-2.html",
        "<html><body><ul><li><a href=\"/threads/9/\">Other</a></li></ul>"
        "<div class=\"pageNav\"><a class=\"pageNav-jump--next\" href=\"page-3\">Next</a></div></body></html>");
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Section);
  s.submit_labels(PageType::Section, {{LabelKind::ThreadLink, paths(p, "//span[@class='title']/a")},
                                      {LabelKind::NextPage, paths(p, "//a[@class='pageNav-jump--next']")}});
  auto gate = s.confirm(PageType::Section);
  EXPECT_FALSE(gate.passed);
  EXPECT_EQ(s.page(PageType::Section).state, PageState::Verifying);
  ASSERT_FALSE(gate.notes.empty());
  EXPECT_NE(gate.notes.back().find(to_string(LabelKind::ThreadLink)), std::string::npos);
}

TEST(TrainingNavigation, SkippedWithoutNextPage) {
  TrainSite t;
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Thread);
  s.submit_labels(PageType::Thread, {{LabelKind::PostAuthor, paths(p, "//a[@class='username']")}});
  auto gate = s.confirm(PageType::Thread);
  EXPECT_TRUE(gate.passed);
  EXPECT_NE(std::find(gate.notes.begin(), gate.notes.end(), "no NextPage locator; next-page check skipped"),
            gate.notes.end());
}

TEST(TrainingScripts, PrefillRevealsSections) {
  TrainSite t;
  write(t.root / "topics.html",
        "<html><body><button data-fixture-action=\"topic-leaks\">Leaks</button>"
        "<script type=\"text/x-fixture-hidden\" data-requires=\"topic-leaks\">"
        "<ul class=\"sections\"><li><a href=\"/forums/10/\">Dumps</a></li><li><a href=\"/forums/11/\">Combos</a></li></ul>"
        "</script></body></html>");
  FixtureAdapter a(t.site());
  auto c = t.config();
  c.urls.home = "http://forum.test/topics.html";
  TrainingSession s(c, a);
  const auto& p = s.load_page(PageType::Home);
  EXPECT_TRUE(evaluate_xpath(*p.snapshot, "//ul[@class='sections']/li/a").empty());

  s.attach_script(PageType::Home, "  \n");
  EXPECT_FALSE(p.script);
  EXPECT_TRUE(evaluate_xpath(*p.snapshot, "//ul[@class='sections']/li/a").empty());

  try {
    s.attach_script(PageType::Home, click_script_template());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScriptError);
    EXPECT_NE(e.message().find("SyntaxError: Document.evaluate"), std::string::npos);
  }

  auto script = click_script_template("//button[@data-fixture-action='topic-leaks']");
  s.attach_script(PageType::Home, script);
  EXPECT_EQ(p.script, script);
  EXPECT_EQ(evaluate_xpath(*p.snapshot, "//ul[@class='sections']/li/a").size(), 2u);
  s.submit_labels(PageType::Home, {{LabelKind::SectionLink, paths(p, "//ul[@class='sections']/li/a")}});
  EXPECT_TRUE(s.confirm(PageType::Home).passed);
}

TEST(TrainingScripts, TimedInteractionsRevealPostContent) {
  TrainSite t;
  write(t.root / "threads/1/index.html",
        "<html><body><h1>Thread one</h1><article><button data-fixture-action=\"like\">Like</button>"
        "<button data-fixture-action=\"quote\">Quote</button><button data-fixture-action=\"reply\">Reply</button>"
        "<script type=\"text/x-fixture-hidden\" data-requires=\"like quote reply\">"
        "<div class=\"post-message\">hidden body</div></script></article></body></html>");
  FixtureAdapter a(t.site());
  TrainingSession s(t.config(), a);
  const auto& p = s.load_page(PageType::Thread);
  std::string script = "(async () => {\nconst millis = 5;\n";
  for (std::string action : {"like", "quote", "reply"})
    script += click_script_template("//button[@data-fixture-action='" + action + "']") +
              "\nawait new Promise(r => setTimeout(r, millis));\n";
  script += "})();";
  s.attach_script(PageType::Thread, script);
  ASSERT_EQ(evaluate_xpath(*p.snapshot, "//div[@class='post-message']").size(), 1u);
  s.submit_labels(PageType::Thread, {{LabelKind::PostContent, paths(p, "//div[@class='post-message']")}});
  EXPECT_TRUE(s.confirm(PageType::Thread).passed);
}

TEST(TrainingProfileTest, FinalizeRoundTripAndSeededIdempotence) {
  TrainSite t;
  FixtureAdapter a(t.site());
  SimulatedClock clock(SysTime{} + std::chrono::hours(24 * 20000) + std::chrono::milliseconds(1500));
  TrainingSession s(t.config(false), a, {}, std::nullopt, &clock);
  train_login(s);
  EXPECT_EQ(code_of([&] { s.finalize_profile(); }), ErrorCode::IncompleteSession);
  train_home(s);
  EXPECT_TRUE(s.logged_in());
  EXPECT_TRUE(a.logged_in());
  train_section(s);
  train_thread(s);
  EXPECT_FALSE(s.current_page());
  auto profile = s.finalize_profile();
  EXPECT_EQ(profile.pages.size(), 4u);
  EXPECT_FALSE(profile.pages.count(PageType::Subsection));
  EXPECT_EQ(profile.created_at.time_since_epoch() % std::chrono::seconds(1), SysTime::duration::zero());
  EXPECT_EQ(profile.locator(PageType::Thread, LabelKind::PostDate)->date_format, "%b %d, %Y");

  auto file = t.root / "profile.json";
  save_profile(profile, file.string());
  EXPECT_EQ(load_profile(file.string()), profile);

  // Every locator resolves on its training snapshot.
  for (const auto& [type, page] : profile.pages)
    for (const auto& [label, loc] : page.labels)
      EXPECT_FALSE(resolve(*s.page(type).snapshot, loc).empty()) << to_string(type) << "/" << to_string(label);

  FixtureAdapter b(t.site());
  TrainingSession seeded(t.config(false), b, {}, profile, &clock);
  for (const auto& rec : seeded.pages()) {
    const auto& p = seeded.load_page(rec.type);
    EXPECT_EQ(p.results.size(), profile.pages.at(rec.type).labels.size()) << to_string(rec.type);
    seeded.submit_labels(rec.type, p.assignments);
    ASSERT_TRUE(seeded.confirm(rec.type).passed) << to_string(rec.type);
  }
  EXPECT_EQ(seeded.finalize_profile(), profile);
}

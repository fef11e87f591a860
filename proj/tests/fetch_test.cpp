#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "forumcrawl/control.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/url.hpp"

using namespace forumcrawl;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Locator loc(const std::string& expr) { return Locator{XPathExpr::parse(expr), Strategy::Manual, {}, {}}; }

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

/// Small site exercising every manifest behavior.
struct MiniSite {
  fs::path root;
  std::shared_ptr<FixtureSite> site;

  MiniSite() {
    root = fs::temp_directory_path() / ("forumcrawl_fetch_" + std::to_string(::getpid()));
    fs::remove_all(root);
    write(root / "index.html",
          "<!DOCTYPE html><html><head><title>Home</title></head><body>"
          "<div class=\"nav\"><a href=\"/forums/a/\">A</a></div>"
          "<button data-fixture-action=\"topic-leaks\">Leaks</button>"
          "<script type=\"text/x-fixture-hidden\" data-requires=\"topic-leaks\">"
          "<ul class=\"sections\"><li><a href=\"/forums/leaks/\">Leaks</a></li></ul></script>"
          "</body></html>");
    write(root / "forums/a/index.html",
          "<html><body><div class=\"list\"><a class=\"t\" href=\"/threads/1/\">T1</a></div>"
          "<a class=\"next\" href=\"page-2\">Next</a></body></html>");
    write(root / "forums/a/page-2.html", "<html><body><div class=\"list\"><a class=\"t\">T2</a></div></body></html>");
    write(root / "threads/1/index.html",
          "<html><body><img src=\"/img/avatar.png\"><img src=\"/img/missing.png\">"
          "<div class=\"post\"><button data-fixture-action=\"like\">Like</button>"
          "<button data-fixture-action=\"reply\">Reply</button>"
          "<script type=\"text/x-fixture-hidden\" data-requires=\"like reply\">"
          "<div class=\"post-message\">secret text</div></script></div></body></html>");
    write(root / "img/avatar.png", "PNG");
    write(root / "flaky.html", "<html><body><p>finally</p></body></html>");
    write(root / "slow.html", "<html><body><p>slow</p></body></html>");
    write(root / "gated.html", "<html><head><title>Gated</title></head><body><p>inside</p></body></html>");
    write(root / "uid.html", "<html><body><a id=\"{{XF_UID}}\" class=\"x\">x</a></body></html>");
    write(root / "probe.html", "<html><body><span id=\"webdriver\">{{WEBDRIVER}}</span></body></html>");
    write(root / "mutating.html", "<html><body><div class=\"v1\"><a>x</a></div></body></html>");
    write(root / "live.html", "<html><body><div id=\"c\"><a class=\"x\">x</a></div></body></html>");
    write(root / "login/index.html",
          "<html><head><title>Log in</title></head><body><form action=\"/login/login\" method=\"post\">"
          "<input type=\"text\" name=\"login\" autocomplete=\"username\">"
          "<input type=\"password\" name=\"password\">"
          "<button type=\"submit\" class=\"button--primary\">Log in</button></form></body></html>");
    write(root / "members.html", "<html><body><p>members only</p></body></html>");

    FixtureManifest m;
    m.base_url = "http://forum.test";
    m.login = FixtureLogin{"/login/", "/login/login", "analyst", "pw", "/", "login", "password"};
    using K = FixtureBehavior::Kind;
    m.behaviors.push_back({K::FailFirst, "/flaky.html", 1, ErrorCode::NetworkError, {}, {}, 0});
    m.behaviors.push_back({K::Slow, "/slow.html", 1, ErrorCode::NetworkError, {}, {}, 300});
    m.behaviors.push_back({K::TicketGate, "/gated.html", 1, ErrorCode::NetworkError, {"cf-commitment-2.58", "cf-tokens"}, {}, 0});
    m.behaviors.push_back({K::RerandomizeIds, "/uid.html", 1, ErrorCode::NetworkError, {}, {}, 0});
    m.behaviors.push_back({K::MutateAfterVisit, "/mutating.html", 1, ErrorCode::NetworkError, {}, {{"class=\"v1\"", "class=\"v2\""}}, 0});
    m.behaviors.push_back({K::LiveMutation, "/live.html", 1, ErrorCode::NetworkError, {}, {{"<a class=\"x\">x</a>", "<span><a class=\"x\">x</a></span>"}}, 0});
    m.behaviors.push_back({K::RequireLogin, "/members.html", 1, ErrorCode::NetworkError, {}, {}, 0});
    write(root / "manifest.json", manifest_to_json(m).dump(2));
    site = std::make_shared<FixtureSite>(root);
  }
  ~MiniSite() { fs::remove_all(root); }

  std::string url(const std::string& path) const { return "http://forum.test" + path; }
};

TrainedProfile login_profile() {
  TrainedProfile p;
  p.forum_id = "mini";
  auto& page = p.pages[PageType::Login];
  page.labels[LabelKind::UsernameField] = loc("//input[@autocomplete='username']");
  page.labels[LabelKind::PasswordField] = loc("//input[@name='password']");
  page.labels[LabelKind::LoginButton] = loc("//button[@type='submit']");
  return p;
}

}  // namespace

// --- urls ------------------------------------------------------------------

TEST(Url, ResolveReferenceExamples) {
  // Normal examples of RFC 3986 reference resolution.
  const std::string base = "http://a/b/c/d;p?q";
  const std::pair<const char*, const char*> cases[] = {
      {"g", "http://a/b/c/g"},       {"./g", "http://a/b/c/g"},     {"g/", "http://a/b/c/g/"},
      {"/g", "http://a/g"},          {"//g", "http://g/"},          {"?y", "http://a/b/c/d;p?y"},
      {"g?y", "http://a/b/c/g?y"},   {"#s", "http://a/b/c/d;p?q#s"}, {"g#s", "http://a/b/c/g#s"},
      {"", "http://a/b/c/d;p?q"},    {".", "http://a/b/c/"},        {"./", "http://a/b/c/"},
      {"..", "http://a/b/"},         {"../", "http://a/b/"},        {"../g", "http://a/b/g"},
      {"../..", "http://a/"},        {"../../g", "http://a/g"},     {"../../../g", "http://a/g"},
      {"g;x=1/../y", "http://a/b/c/y"},
  };
  for (const auto& [ref, want] : cases) EXPECT_EQ(resolve_url(base, ref), want) << ref;
}

TEST(Url, CanonicalThreadUrl) {
  EXPECT_EQ(canonical_thread_url("http://f.test/threads/x.12/page-3#post-9"), "http://f.test/threads/x.12/");
  EXPECT_EQ(canonical_thread_url("http://f.test/threads/x.12/page-3/"), "http://f.test/threads/x.12/");
  EXPECT_EQ(canonical_thread_url("http://f.test/t/12/page/2"), "http://f.test/t/12/");
  EXPECT_EQ(canonical_thread_url("http://f.test/showthread.php?tid=5&page=2"), "http://f.test/showthread.php?tid=5");
  EXPECT_EQ(canonical_thread_url("http://f.test/viewtopic.php?t=9&f=2&start=20"), "http://f.test/viewtopic.php?f=2&t=9");
  EXPECT_EQ(canonical_thread_url("http://f.test/threads/12/"), "http://f.test/threads/12/");
  EXPECT_EQ(canonical_thread_url("http://f.test/threads/page-turner.4/"), "http://f.test/threads/page-turner.4/");
}

// --- commands and clock ----------------------------------------------------

TEST(Commands, Transitions) {
  EXPECT_EQ(handle_command(RunStatus::Running, Command::Pause).next, RunStatus::Paused);
  auto r = handle_command(RunStatus::Running, Command::Resume);
  EXPECT_EQ(r.next, RunStatus::Running);
  EXPECT_TRUE(r.cancel_wait);
  EXPECT_EQ(handle_command(RunStatus::Paused, Command::Resume).next, RunStatus::Running);
  EXPECT_EQ(handle_command(RunStatus::Paused, Command::Terminate).next, RunStatus::Terminated);
  auto t = handle_command(RunStatus::Running, Command::Terminate);
  EXPECT_EQ(code_of([&] { handle_command(t.next, Command::Terminate); }), ErrorCode::InvalidTransition);
  EXPECT_EQ(command_from_string("pause"), Command::Pause);
  EXPECT_FALSE(command_from_string("stop"));
}

TEST(Clock, SimulatedSleepStopsForPendingCommand) {
  SysTime t0 = SysTime{} + std::chrono::hours(1000);
  SimulatedClock clock(t0);
  CommandChannel ch;
  clock.sleep_until(t0 + std::chrono::seconds(180), ch);
  EXPECT_EQ(clock.now(), t0 + std::chrono::seconds(180));
  ch.post(Command::Resume);
  clock.sleep_until(t0 + std::chrono::seconds(999), ch);
  EXPECT_EQ(clock.now(), t0 + std::chrono::seconds(180));
  EXPECT_EQ(ch.try_pop(), Command::Resume);
}

TEST(Clock, SystemSleepWakesOnCommand) {
  SystemClock clock;
  CommandChannel ch;
  auto start = std::chrono::steady_clock::now();
  std::thread poster([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    ch.post(Command::Resume);
  });
  clock.sleep_until(clock.now() + std::chrono::seconds(30), ch);
  poster.join();
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

// --- captcha detection -----------------------------------------------------

TEST(Captcha, Detection) {
  auto inline_page = parse_snapshot(
      "<html><body><form><div class=\"g-recaptcha\" data-sitekey=\"k\"></div></form></body></html>", "u");
  auto sig = detect_captcha(inline_page);
  ASSERT_TRUE(sig);
  EXPECT_EQ(sig->kind, CaptchaKind::InlineWidget);
  auto inter = parse_snapshot("<html><head><title>Just a moment...</title></head><body></body></html>", "u");
  ASSERT_TRUE(detect_captcha(inter));
  EXPECT_EQ(detect_captcha(inter)->kind, CaptchaKind::InterstitialChallenge);
  EXPECT_FALSE(detect_captcha(parse_snapshot("<html><body><p>hi</p></body></html>", "u")));
}

TEST(Captcha, ClickTemplate) {
  EXPECT_EQ(click_script_template(),
            "document.evaluate(\"YOUR_XPATH_HERE\", document, null, XPathResult.FIRST_ORDERED_NODE_TYPE, "
            "null).singleNodeValue.click();");
  EXPECT_NE(click_script_template("//a[@x=\"1\"]").find("\\\"1\\\""), std::string::npos);
}

// --- fixture adapter -------------------------------------------------------

TEST(Fixture, OpenReturnsOnDiskBytes) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = a.open(s.url("/forums/a/"));
  EXPECT_EQ(h.snapshot.raw_bytes(), read_all(s.root / "forums/a/index.html"));
  EXPECT_EQ(h.current_url, s.url("/forums/a/"));
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].action, "open");
  EXPECT_EQ(log[0].outcome, "ok");
  EXPECT_TRUE(a.drain_log().empty());
}

TEST(Fixture, MissingPageIs404AndForeignHostIsNetworkError) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = a.open(s.url("/nope/"));
  EXPECT_EQ(a.drain_log().at(0).outcome, "http_404");
  EXPECT_EQ(code_of([&] { a.open("http://elsewhere.test/"); }), ErrorCode::NetworkError);
  EXPECT_EQ(a.drain_log().size(), 1u);
}

TEST(Fixture, FailFirstThenSuccess) {
  MiniSite s;
  FixtureAdapter a(s.site);
  EXPECT_EQ(code_of([&] { a.open(s.url("/flaky.html")); }), ErrorCode::NetworkError);
  auto h = a.open(s.url("/flaky.html"));
  EXPECT_EQ(evaluate_xpath(h.snapshot, "//p").size(), 1u);
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].outcome, "NetworkError");
  EXPECT_EQ(log[1].outcome, "ok");
}

TEST(Fixture, ImagesOnlyWhenEnabled) {
  MiniSite s;
  FixtureAdapter a(s.site);
  a.open(s.url("/threads/1/"));
  for (const auto& e : a.drain_log()) EXPECT_NE(e.action, "image");
  a.set_images_enabled(true);
  a.open(s.url("/threads/1/"));
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[1].action, "image");
  EXPECT_EQ(log[1].outcome, "ok");
  EXPECT_EQ(log[2].outcome, "http_404");
}

TEST(Fixture, ClickNavigatesAndStaleLocatorIsNotFound) {
  MiniSite s;
  FixtureAdapter a(s.site);
  a.open(s.url("/forums/a/"));
  auto h = a.click(loc("//a[@class='next']"));
  EXPECT_EQ(h.current_url, s.url("/forums/a/page-2"));
  EXPECT_EQ(code_of([&] { a.click(loc("//a[@class='next']")); }), ErrorCode::NotFound);
}

TEST(Fixture, ScriptRevealsHiddenContent) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = a.open(s.url("/threads/1/"));
  EXPECT_TRUE(evaluate_xpath(h.snapshot, "//div[@class='post-message']").empty());
  std::string script =
      "(async () => {\n"
      "  const millis = 1500;\n"
      "  // like, then reply\n"
      "  " + click_script_template("//button[@data-fixture-action='like']") + "\n"
      "  await new Promise(r => setTimeout(r, millis));\n"
      "  " + click_script_template("//button[@data-fixture-action='reply']") + "\n"
      "})();";
  h = a.execute_script(script);
  auto msgs = evaluate_xpath(h.snapshot, "//div[@class='post-message']");
  ASSERT_EQ(msgs.size(), 1u);
  EXPECT_EQ(text_content(msgs[0]).text, "secret text");
  EXPECT_EQ(h.current_url, s.url("/threads/1/"));
}

TEST(Fixture, PartialScriptKeepsContentHidden) {
  MiniSite s;
  FixtureAdapter a(s.site);
  a.open(s.url("/threads/1/"));
  auto h = a.execute_script(click_script_template("//button[@data-fixture-action='like']"));
  EXPECT_TRUE(evaluate_xpath(h.snapshot, "//div[@class='post-message']").empty());
}

TEST(Fixture, TopicClickRevealsSectionsWithoutUrlChange) {
  MiniSite s;
  FixtureAdapter a(s.site);
  a.open(s.url("/"));
  auto h = a.execute_script(click_script_template("//button[contains(@data-fixture-action,'leaks')]"));
  EXPECT_EQ(evaluate_xpath(h.snapshot, "//ul[@class='sections']/li/a").size(), 1u);
  EXPECT_EQ(h.current_url, s.url("/"));
}

TEST(Fixture, ScriptErrors) {
  MiniSite s;
  FixtureAdapter a(s.site);
  a.open(s.url("/threads/1/"));
  EXPECT_EQ(code_of([&] { a.execute_script("document.evaluate(\"//a\", document"); }), ErrorCode::ScriptError);
  EXPECT_EQ(code_of([&] { a.execute_script(click_script_template()); }), ErrorCode::ScriptError);
  EXPECT_EQ(code_of([&] { a.execute_script(click_script_template("//nav")); }), ErrorCode::ScriptError);
  EXPECT_EQ(code_of([&] { a.execute_script("window.location = 'x'"); }), ErrorCode::ScriptError);
  try {
    a.execute_script(click_script_template("//nav"));
  } catch (const Error& e) {
    EXPECT_EQ(e.message(), "TypeError: document.evaluate(...).singleNodeValue is null");
  }
  auto before = a.current()->snapshot.raw_bytes();
  auto h = a.execute_script("  \n");
  EXPECT_EQ(h.snapshot.raw_bytes(), before);
}

TEST(Fixture, TicketGate) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = a.open(s.url("/gated.html"));
  auto sig = detect_captcha(h.snapshot);
  ASSERT_TRUE(sig);
  EXPECT_EQ(sig->kind, CaptchaKind::InterstitialChallenge);
  EXPECT_EQ(a.drain_log().at(0).outcome, "interstitial");
  a.inject_tickets({});
  EXPECT_TRUE(detect_captcha(a.open(s.url("/gated.html")).snapshot));
  a.inject_tickets({{{"cf-commitment-2.58", "c"}, {"cf-tokens", "[\"t\"]"}}});
  h = a.open(s.url("/gated.html"));
  EXPECT_FALSE(detect_captcha(h.snapshot));
  EXPECT_EQ(evaluate_xpath(h.snapshot, "//p").size(), 1u);
  EXPECT_EQ(code_of([&] { a.inject_tickets({{{"", "x"}, {"ok", "y"}}}); }), ErrorCode::InjectionFailed);
  EXPECT_EQ(a.ticket_storage().count("ok"), 1u);
}

TEST(Fixture, AutomationProbe) {
  MiniSite s;
  FixtureAdapter unmasked(s.site);
  EXPECT_EQ(text_content(evaluate_xpath(unmasked.open(s.url("/probe.html")).snapshot, "//span")[0]).text, "true");
  FixtureAdapter masked(s.site);
  masked.mask_automation();
  EXPECT_EQ(text_content(evaluate_xpath(masked.open(s.url("/probe.html")).snapshot, "//span")[0]).text, "undefined");
}

TEST(Fixture, RerandomizedIdsDifferPerLoad) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto id1 = std::string(*evaluate_xpath(a.open(s.url("/uid.html")).snapshot, "//a")[0].attribute("id"));
  auto id2 = std::string(*evaluate_xpath(a.open(s.url("/uid.html")).snapshot, "//a")[0].attribute("id"));
  EXPECT_NE(id1, id2);
  EXPECT_EQ(id1.rfind("_xfUid-", 0), 0u);
}

TEST(Fixture, MutationAfterFirstVisitIsSiteWide) {
  MiniSite s;
  {
    FixtureAdapter trainer(s.site);
    EXPECT_EQ(evaluate_xpath(trainer.open(s.url("/mutating.html")).snapshot, "//div[@class='v1']").size(), 1u);
  }
  FixtureAdapter crawler(s.site);
  EXPECT_EQ(evaluate_xpath(crawler.open(s.url("/mutating.html")).snapshot, "//div[@class='v2']").size(), 1u);
}

TEST(Fixture, LiveDomDiffersFromSavedSnapshot) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = a.open(s.url("/live.html"));
  EXPECT_EQ(evaluate_xpath(h.snapshot, "//div/a").size(), 1u);
  auto live = a.live_dom();
  EXPECT_EQ(evaluate_xpath(live, "//div/a").size(), 0u);
  EXPECT_EQ(evaluate_xpath(live, "//div/span/a").size(), 1u);
}

TEST(Fixture, SlowPageTimesOutAndConcurrentCallIsBusy) {
  MiniSite s;
  FixtureOptions opts;
  opts.load_timeout = std::chrono::milliseconds(100);
  FixtureAdapter quick(s.site, opts);
  EXPECT_EQ(code_of([&] { quick.open(s.url("/slow.html")); }), ErrorCode::Timeout);

  FixtureAdapter a(s.site);
  std::thread slow([&] { a.open(s.url("/slow.html")); });
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  EXPECT_EQ(code_of([&] { a.open(s.url("/forums/a/")); }), ErrorCode::Busy);
  slow.join();
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].url, s.url("/slow.html"));
}

TEST(Login, FormAuthLandsOnHome) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto h = login(a, login_profile(), s.url("/login/"), {"analyst", "pw"}, nullptr);
  EXPECT_EQ(h.current_url, s.url("/"));
  EXPECT_TRUE(a.logged_in());
  EXPECT_EQ(evaluate_xpath(a.open(s.url("/members.html")).snapshot, "//p").size(), 1u);
  for (const auto& e : a.drain_log()) EXPECT_EQ(e.url.find("pw"), std::string::npos);
}

TEST(Login, WrongCredentialsFail) {
  MiniSite s;
  FixtureAdapter a(s.site);
  EXPECT_EQ(code_of([&] { login(a, login_profile(), s.url("/login/"), {"analyst", "nope"}, nullptr); }),
            ErrorCode::LoginFailed);
  auto members = a.open(s.url("/members.html"));
  EXPECT_EQ(evaluate_xpath(members.snapshot, "//form").size(), 1u);
}

TEST(Login, MissingLocatorNamed) {
  MiniSite s;
  FixtureAdapter a(s.site);
  auto p = login_profile();
  p.pages[PageType::Login].labels.erase(LabelKind::LoginButton);
  try {
    login(a, p, s.url("/login/"), {"analyst", "pw"}, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProfileLocatorMissing);
    EXPECT_NE(e.message().find("login_button"), std::string::npos);
  }
}

TEST(Login, InlineCaptchaBlocksOnOperator) {
  MiniSite s;
  auto manifest = s.site->manifest();
  manifest.behaviors.push_back({FixtureBehavior::Kind::InlineCaptcha, "/login/", 1, ErrorCode::NetworkError, {}, {}, 0});
  auto site = std::make_shared<FixtureSite>(s.root, manifest);
  FixtureAdapter a(site);
  std::vector<std::string> asked;
  OperatorPrompt prompt = [&](PromptKind kind, const std::string& q) {
    EXPECT_EQ(kind, PromptKind::CaptchaSolved);
    asked.push_back(q);
    return asked.size() == 1 ? std::string("not yet") : std::string(" solved\n");
  };
  auto h = login(a, login_profile(), s.url("/login/"), {"analyst", "pw"}, prompt);
  EXPECT_EQ(asked.size(), 2u);
  EXPECT_EQ(h.current_url, s.url("/"));

  FixtureAdapter b(site);
  EXPECT_EQ(code_of([&] { login(b, login_profile(), s.url("/login/"), {"analyst", "pw"}, nullptr); }),
            ErrorCode::FetchFailed);
}

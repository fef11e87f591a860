#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "forumcrawl/error.hpp"
#include "forumcrawl/locator.hpp"

using namespace forumcrawl;

namespace {

std::string read_fixture(const std::string& rel) {
  std::ifstream in(std::string(FORUMCRAWL_TEST_DATA) + "/" + rel, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NodeRef at(const DomSnapshot& snap, const std::string& path) {
  auto n = node_at(snap, AbsolutePath::parse(path));
  if (!n) throw std::runtime_error("no node at " + path);
  return *n;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::StoreError;
}

// Brute force: elements whose attribute `name` equals `value`.
std::size_t count_with_attribute(const DomSnapshot& snap, std::string_view name, std::string_view value) {
  std::size_t n = 0;
  for (const auto& el : snap.elements())
    if (el.attribute(name) == value) ++n;
  return n;
}

const char* kSubsectionBase = "/html[1]/body[1]/div[2]/div[1]/div[1]";

std::string subsection_link(int k) {
  return std::string(kSubsectionBase) + "/div[" + std::to_string(k) + "]/div[1]/div[1]/h3[1]/a[1]";
}

}  // namespace

TEST(StrategyNames, RoundTripAndOrder) {
  for (auto s : {Strategy::RobustAttribute, Strategy::AbsoluteCommon, Strategy::CommonClass, Strategy::LiveResolve,
                 Strategy::Manual})
    EXPECT_EQ(strategy_from_string(to_string(s)), s);
  EXPECT_EQ(next_strategy(Strategy::RobustAttribute), Strategy::AbsoluteCommon);
  EXPECT_EQ(next_strategy(Strategy::LiveResolve), Strategy::Manual);
  EXPECT_FALSE(next_strategy(Strategy::Manual).has_value());
}

TEST(InferS1, UniqueIdUsesIdPredicate) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  auto nav = evaluate_xpath(snap, "//a[@id='nav']");
  ASSERT_EQ(nav.size(), 1u);
  auto loc = infer_s1(snap, nav);
  EXPECT_EQ(loc.expr.canonical(), "//*[@id='nav']");
  EXPECT_EQ(loc.strategy, Strategy::RobustAttribute);
}

TEST(InferS1, StableAttributeOnLoginField) {
  auto snap = parse_snapshot(
      "<form><input type='text' class='input' name='keywords'></form>"
      "<form><input type='text' class='input' autocomplete='username'>"
      "<input type='password' class='input' autocomplete='current-password'>"
      "<button type='submit' class='button'>Log in</button></form>",
      "u");
  auto user = evaluate_xpath(snap, "//form[2]/input[1]");
  ASSERT_EQ(user.size(), 1u);
  auto loc = infer_s1(snap, user);
  EXPECT_EQ(loc.expr.canonical(), "//input[@autocomplete='username']");
  // Oracle: the attribute value is page-unique by brute-force scan.
  EXPECT_EQ(count_with_attribute(snap, "autocomplete", "username"), 1u);
  auto res = evaluate_xpath(snap, loc.expr);
  ASSERT_EQ(res.size(), 1u);
  EXPECT_EQ(res[0], user[0]);
}

TEST(InferS1, MultiTargetRejected) {
  auto snap = parse_snapshot("<a>x</a><a>y</a>", "u");
  auto links = evaluate_xpath(snap, "//a");
  EXPECT_EQ(code_of([&] { infer_s1(snap, links); }), ErrorCode::MultiTarget);
}

TEST(InferS1, BudgetExhaustionIsNotUnique) {
  auto snap = parse_snapshot("<div><p>a</p><p>b</p><p>c</p></div><div><p>a</p><p>b</p><p>c</p></div>", "u");
  auto p = evaluate_xpath(snap, "//div[2]/p[3]");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(code_of([&] { infer_s1(snap, p, 3); }), ErrorCode::NotUnique);
  auto loc = infer_s1(snap, p);
  EXPECT_EQ(evaluate_xpath(snap, loc.expr), p);
}

// Property: on random documents S1 returns an expression that selects the
// target alone and never predicates on a blacklisted attribute.
TEST(InferS1Property, UniqueAndNoBlacklistedAttributes) {
  std::mt19937 rng(3);
  const char* tags[] = {"div", "span", "a", "img", "p"};
  const char* attrs[] = {"class", "href", "src", "title", "style", "data-k", "name", "width"};
  std::uniform_int_distribution<int> kids(0, 3), tag(0, 4), attr(0, 7), val(0, 2), coin(0, 2);
  for (int iter = 0; iter < 60; ++iter) {
    std::string html = "<body>";
    std::function<void(int)> gen = [&](int d) {
      int n = d > 3 ? 1 : kids(rng) + 1;
      for (int i = 0; i < n; ++i) {
        const char* t = tags[tag(rng)];
        html += std::string("<") + t;
        if (coin(rng)) html += std::string(" ") + attrs[attr(rng)] + "=\"v" + std::to_string(val(rng)) + "\"";
        html += ">";
        if (d < 4) gen(d + 1);
        html += std::string("</") + t + ">";
      }
    };
    gen(0);
    html += "</body>";
    auto snap = parse_snapshot(html, "u");
    auto els = snap.elements();
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    for (int k = 0; k < 5; ++k) {
      NodeRef target = els[pick(rng)];
      NodeRef one[] = {target};
      auto loc = infer_s1(snap, one);
      auto text = loc.expr.canonical();
      for (const char* bad : {"@src", "@href", "@onclick", "@style", "@height", "@width"})
        EXPECT_EQ(text.find(bad), std::string::npos) << text;
      auto res = evaluate_xpath(snap, loc.expr);
      ASSERT_EQ(res.size(), 1u) << text;
      EXPECT_EQ(res[0], target) << text;
    }
  }
}

TEST(InferS2, SubsectionGeneralizationDropsDifferingIndex) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  NodeRef targets[] = {at(snap, subsection_link(5)), at(snap, subsection_link(6))};
  auto loc = infer_s2(snap, targets);
  EXPECT_EQ(loc.expr.canonical(), std::string(kSubsectionBase) + "/div/div[1]/div[1]/h3[1]/a[1]");
  EXPECT_EQ(loc.strategy, Strategy::AbsoluteCommon);

  // Oracle: every subsection title link found by scanning for h3.node-title > a.
  std::vector<NodeRef> expected;
  for (const auto& el : snap.elements())
    if (el.tag() == "a" && el.parent().tag() == "h3" && el.parent().attribute("class") == "node-title")
      expected.push_back(el);
  ASSERT_EQ(expected.size(), 8u);
  EXPECT_EQ(resolve(snap, loc), expected);

  std::vector<NodeRef> unwanted;
  for (const auto& n : expected)
    if (n != targets[0] && n != targets[1]) unwanted.push_back(n);
  auto narrowed = apply_ignore(loc, unwanted, snap);
  EXPECT_EQ(narrowed.ignore.size(), 6u);
  EXPECT_EQ(resolve(snap, narrowed), (std::vector<NodeRef>{targets[0], targets[1]}));
}

TEST(InferS2, TaggedThreadsOverMatch) {
  auto snap = parse_snapshot(read_fixture("pages/tagged_threads.html"), "u");
  // Row 1 is untagged (thread link a[1]); row 3 carries a tag (thread link a[2]).
  NodeRef targets[] = {at(snap, "/html[1]/body[1]/div[1]/div[1]/div[2]/div[1]/a[1]"),
                       at(snap, "/html[1]/body[1]/div[1]/div[3]/div[2]/div[1]/a[2]")};
  auto loc = infer_s2(snap, targets);
  EXPECT_EQ(loc.expr.canonical(), "/html[1]/body[1]/div[1]/div/div[2]/div[1]/a");
  std::size_t all_title_links = 0, thread_links = 0;
  for (const auto& el : snap.elements()) {
    if (el.tag() == "a" && el.parent().attribute("class") == "structItem-title") ++all_title_links;
    if (el.attribute("data-xf-init") == "preview-tooltip") ++thread_links;
  }
  EXPECT_EQ(thread_links, 20u);
  EXPECT_EQ(all_title_links, 23u);
  EXPECT_EQ(resolve(snap, loc).size(), all_title_links);
  EXPECT_EQ(evaluate_xpath(snap, "//*[@data-xf-init=\"preview-tooltip\"]").size(), 20u);
}

TEST(InferS2, SingleTargetIsItsOwnPath) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  NodeRef t[] = {at(snap, subsection_link(3))};
  EXPECT_EQ(infer_s2(snap, t).expr.canonical(), subsection_link(3));
}

TEST(InferS2, ShapeMismatch) {
  auto snap = parse_snapshot("<div><a>x</a></div><div><span><a>y</a></span></div><p><a>z</a></p>", "u");
  auto a = evaluate_xpath(snap, "//a");
  NodeRef ragged[] = {a[0], a[1]};
  NodeRef tags[] = {a[0], a[2]};
  EXPECT_EQ(code_of([&] { infer_s2(snap, ragged); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([&] { infer_s2(snap, tags); }), ErrorCode::ShapeMismatch);
}

// Superset law and minimality on random same-shape target sets.
TEST(InferS2Property, SupersetAndMinimal) {
  std::mt19937 rng(5);
  auto snap = parse_snapshot(read_fixture("pages/tagged_threads.html"), "u");
  std::map<std::string, std::vector<NodeRef>> by_shape;
  for (const auto& el : snap.elements()) {
    std::string shape;
    for (const auto& s : absolute_path(snap, el).steps) shape += "/" + s.tag;
    by_shape[shape].push_back(el);
  }
  for (auto& [shape, nodes] : by_shape) {
    if (nodes.size() < 2) continue;
    for (int k = 0; k < 10; ++k) {
      std::shuffle(nodes.begin(), nodes.end(), rng);
      std::size_t n = std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(nodes.size(), 4))(rng);
      std::vector<NodeRef> targets(nodes.begin(), nodes.begin() + static_cast<long>(n));
      auto loc = infer_s2(snap, targets);
      auto res = resolve(snap, loc);
      for (const auto& t : targets) EXPECT_NE(std::find(res.begin(), res.end(), t), res.end()) << shape;

      const auto& steps = loc.expr.branches().front().steps;
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!steps[i].predicates.empty()) continue;
        for (const auto& t : targets) {
          auto specialized = loc.expr.branches().front();
          XPathPredicate p;
          p.position = absolute_path(snap, t).steps[i].index;
          specialized.steps[i].predicates.push_back(p);
          auto narrowed = evaluate_xpath(snap, XPathExpr::from_paths({specialized}));
          bool excludes = std::any_of(targets.begin(), targets.end(), [&](const NodeRef& x) {
            return std::find(narrowed.begin(), narrowed.end(), x) == narrowed.end();
          });
          EXPECT_TRUE(excludes) << serialize_path(specialized);
        }
      }
    }
  }
}

TEST(InferS3, CommonToken) {
  auto snap = parse_snapshot(
      "<div class='post hot'>1</div><div class='post new'>2</div><div class='post'>3</div>"
      "<div class='poster'>4</div><span class='post'>5</span>",
      "u");
  auto divs = evaluate_xpath(snap, "//div");
  std::vector<NodeRef> targets(divs.begin(), divs.begin() + 3);
  auto loc = infer_s3(snap, targets);
  EXPECT_EQ(loc.expr.canonical(), "//div[contains(concat(' ',normalize-space(@class),' '),' post ')]");
  EXPECT_EQ(loc.strategy, Strategy::CommonClass);
  // Oracle: token scan over all div elements.
  std::vector<NodeRef> expected;
  for (const auto& el : snap.elements()) {
    if (el.tag() != "div") continue;
    auto tokens = el.class_tokens();
    if (std::find(tokens.begin(), tokens.end(), "post") != tokens.end()) expected.push_back(el);
  }
  EXPECT_EQ(resolve(snap, loc), expected);
}

TEST(InferS3, SingleClassAndFailures) {
  auto snap = parse_snapshot("<p class='a'>1</p><p class='a'>2</p><p class='b'>3</p><span class='a'>4</span>", "u");
  auto p = evaluate_xpath(snap, "//p");
  NodeRef same[] = {p[0], p[1]};
  EXPECT_EQ(infer_s3(snap, same).expr.canonical(), "//p[contains(concat(' ',normalize-space(@class),' '),' a ')]");
  NodeRef disjoint[] = {p[0], p[2]};
  EXPECT_EQ(code_of([&] { infer_s3(snap, disjoint); }), ErrorCode::NoCommonClass);
  NodeRef mixed[] = {p[0], evaluate_xpath(snap, "//span")[0]};
  EXPECT_EQ(code_of([&] { infer_s3(snap, mixed); }), ErrorCode::NoCommonClass);
}

TEST(InferS4, NoDivergenceEqualsS2) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  NodeRef targets[] = {at(snap, subsection_link(2)), at(snap, subsection_link(7))};
  LiveDomProvider live = [&] { return parse_snapshot(snap.raw_bytes(), "u"); };
  auto s4 = infer_s4(live, snap, targets);
  EXPECT_EQ(s4.expr, infer_s2(snap, targets).expr);
  EXPECT_EQ(s4.strategy, Strategy::LiveResolve);
}

TEST(InferS4, WrapperInsertedByScript) {
  auto snap = parse_snapshot("<div id='list'><a class='t'>one</a><a class='t'>two</a></div>", "u");
  // Hand-computed: a script wrapped the links in <div class='wrap'>.
  LiveDomProvider live = [] {
    return parse_snapshot("<div id='list'><div class='wrap'><a class='t'>one</a><a class='t'>two</a></div></div>",
                          "u");
  };
  auto links = evaluate_xpath(snap, "//a");
  auto loc = infer_s4(live, snap, links);
  EXPECT_EQ(loc.expr.canonical(), "/html[1]/body[1]/div[1]/div[1]/a");
  EXPECT_NE(loc.expr, infer_s2(snap, links).expr);
}

TEST(InferS4, RemovedTargetFails) {
  auto snap = parse_snapshot("<a>one</a><a>two</a>", "u");
  LiveDomProvider live = [] { return parse_snapshot("<a>one</a>", "u"); };
  auto links = evaluate_xpath(snap, "//a");
  EXPECT_EQ(code_of([&] { infer_s4(live, snap, links); }), ErrorCode::LiveResolveFailed);
}

TEST(Cascade, UniqueIdStopsAtS1) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  auto nav = evaluate_xpath(snap, "//a[@id='nav']");
  auto r = infer_cascade(snap, nav, Strategy::RobustAttribute);
  ASSERT_TRUE(std::holds_alternative<Locator>(r));
  EXPECT_EQ(std::get<Locator>(r).strategy, Strategy::RobustAttribute);
}

TEST(Cascade, MultiNodeFallsToS2) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  NodeRef targets[] = {at(snap, subsection_link(5)), at(snap, subsection_link(6))};
  auto r = infer_cascade(snap, targets, Strategy::RobustAttribute);
  ASSERT_TRUE(std::holds_alternative<Locator>(r));
  EXPECT_EQ(std::get<Locator>(r).strategy, Strategy::AbsoluteCommon);
}

TEST(Cascade, DefeatingS1ToS3GivesTrailOfThree) {
  auto snap = parse_snapshot("<div><a class='x'>1</a></div><div><p><a class='y'>2</a></p></div>", "u");
  auto links = evaluate_xpath(snap, "//a");
  auto r = infer_cascade(snap, links, Strategy::RobustAttribute);
  ASSERT_TRUE(std::holds_alternative<NeedsManual>(r));
  const auto& trail = std::get<NeedsManual>(r).trail;
  ASSERT_EQ(trail.size(), 3u);
  EXPECT_EQ(trail[0].code, ErrorCode::MultiTarget);
  EXPECT_EQ(trail[1].code, ErrorCode::ShapeMismatch);
  EXPECT_EQ(trail[2].code, ErrorCode::NoCommonClass);
}

TEST(Cascade, NeverRunsBelowStart) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  auto nav = evaluate_xpath(snap, "//a[@id='nav']");
  for (auto start : {Strategy::AbsoluteCommon, Strategy::CommonClass, Strategy::LiveResolve, Strategy::Manual}) {
    LiveDomProvider live = [&] { return snap; };
    auto r = infer_cascade(snap, nav, start, &live);
    if (auto* loc = std::get_if<Locator>(&r)) {
      EXPECT_GE(static_cast<int>(loc->strategy), static_cast<int>(start));
    } else {
      for (const auto& f : std::get<NeedsManual>(r).trail)
        EXPECT_GE(static_cast<int>(f.strategy), static_cast<int>(start));
    }
  }
  auto manual = infer_cascade(snap, nav, Strategy::Manual);
  ASSERT_TRUE(std::holds_alternative<NeedsManual>(manual));
  EXPECT_TRUE(std::get<NeedsManual>(manual).trail.empty());
}

TEST(Ignore, EmptyAndNonMatching) {
  auto snap = parse_snapshot("<a>1</a><a>2</a><b>3</b>", "u");
  Locator loc{XPathExpr::parse("//a"), Strategy::Manual, {}, std::nullopt};
  EXPECT_EQ(apply_ignore(loc, {}, snap), loc);
  NodeRef b[] = {evaluate_xpath(snap, "//b")[0]};
  EXPECT_EQ(code_of([&] { apply_ignore(loc, b, snap); }), ErrorCode::NotAMatch);
}

TEST(Ignore, InertOnReloadAndSound) {
  auto snap = parse_snapshot("<a>1</a><a>2</a><a>3</a>", "u");
  Locator loc{XPathExpr::parse("//a"), Strategy::Manual, {}, std::nullopt};
  NodeRef third[] = {evaluate_xpath(snap, "//a")[2]};
  auto ignored = apply_ignore(loc, third, snap);
  auto res = resolve(snap, ignored);
  EXPECT_EQ(res.size(), 2u);
  for (const auto& n : res) EXPECT_FALSE(ignored.ignore.contains(absolute_path(snap, n).to_string()));
  auto reloaded = parse_snapshot("<a>1</a><a>2</a>", "u");
  EXPECT_EQ(resolve(reloaded, ignored).size(), 2u);
}

TEST(Stability, StaticIdsStable) {
  auto snap = parse_snapshot(read_fixture("pages/xss_home.html"), "u");
  std::map<LabelKind, Locator> locs;
  locs[LabelKind::HomeLink] = infer_s1(snap, evaluate_xpath(snap, "//a[@id='nav']"));
  auto report = verify_stability([&] { return parse_snapshot(snap.raw_bytes(), "u"); }, snap, locs);
  EXPECT_EQ(report.reload_count, 1);
  EXPECT_EQ(report.labels.at(LabelKind::HomeLink).outcome, StabilityOutcome::Stable);
  EXPECT_FALSE(report.any_missing());
}

TEST(Stability, RandomizedIdMissingThenS2Stable) {
  int loads = 0;
  auto page = [&] {
    ++loads;
    std::string id = "_xfUid-1-" + std::to_string(1700000000 + loads);
    return parse_snapshot("<form><div><input id='" + id + "' type='text'></div><div><input type='password'></div></form>",
                          "u");
  };
  auto snap = page();
  auto field = evaluate_xpath(snap, "//input[1]");
  std::map<LabelKind, Locator> locs{{LabelKind::UsernameField, infer_s1(snap, {&field[0], 1})}};
  EXPECT_NE(locs[LabelKind::UsernameField].expr.canonical().find("@id="), std::string::npos);
  auto report = verify_stability(page, snap, locs);
  EXPECT_EQ(report.labels.at(LabelKind::UsernameField).outcome, StabilityOutcome::Missing);

  auto r = infer_cascade(snap, {&field[0], 1}, Strategy::AbsoluteCommon);
  locs[LabelKind::UsernameField] = std::get<Locator>(r);
  report = verify_stability(page, snap, locs);
  EXPECT_EQ(report.labels.at(LabelKind::UsernameField).outcome, StabilityOutcome::Stable);
}

TEST(Stability, OvermatchingCarriesSurplus) {
  auto snap = parse_snapshot("<a class='t'>1</a><a class='t'>2</a>", "u");
  std::map<LabelKind, Locator> locs{{LabelKind::ThreadLink, infer_s3(snap, evaluate_xpath(snap, "//a"))}};
  auto report = verify_stability([] { return parse_snapshot("<a class='t'>1</a><a class='t'>2</a><a class='t'>3</a>", "u"); },
                                 snap, locs);
  EXPECT_EQ(report.labels.at(LabelKind::ThreadLink).outcome, StabilityOutcome::Overmatching);
  EXPECT_EQ(report.labels.at(LabelKind::ThreadLink).surplus, 1u);
}

TEST(Stability, NetworkFailureIsFetchFailed) {
  auto snap = parse_snapshot("<a>1</a>", "u");
  std::map<LabelKind, Locator> locs;
  auto failing = []() -> DomSnapshot { throw Error(ErrorCode::NetworkError, "connection refused"); };
  EXPECT_EQ(code_of([&] { verify_stability(failing, snap, locs); }), ErrorCode::FetchFailed);
}

TEST(Stability, NextButtonAcrossNavVariants) {
  auto variant = [](int pages_shown, bool prev) {
    std::string nav = "<div class='pageNav'>";
    if (prev) nav += "<a class='pageNav-jump pageNav-jump--prev' href='?p=1'>Prev</a>";
    for (int i = 1; i <= pages_shown; ++i) nav += "<a class='pageNav-page' href='?p=" + std::to_string(i) + "'>" +
                                                  std::to_string(i) + "</a>";
    nav += "<a class='pageNav-jump pageNav-jump--next' href='?p=9'>Next</a></div>";
    return parse_snapshot("<body><ul class='menu'><li>a</li><li>b</li><li>c</li></ul>"
                          "<div class='content'><p>x</p><p>y</p><p>z</p></div>" + nav + "</body>", "u");
  };
  auto page1 = variant(2, false);
  auto page2 = variant(3, true);
  auto next1 = evaluate_xpath(page1, "//a[contains(@class,'--next')]");
  auto next2 = evaluate_xpath(page2, "//a[contains(@class,'--next')]");
  auto s1 = infer_s1(page1, next1);
  EXPECT_EQ(s1.expr.canonical(), "//a[@class='pageNav-jump pageNav-jump--next']");
  EXPECT_EQ(resolve(page2, s1), next2);
  // A fully indexed path taken on page 1 lands on a page button on page 2.
  auto indexed = infer_s2(page1, next1);
  EXPECT_NE(resolve(page2, indexed), next2);
}

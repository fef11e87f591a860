#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "forumcrawl/error.hpp"
#include "forumcrawl/xpath.hpp"

using namespace forumcrawl;

namespace {

// Document and expected results generated by tests/oracle/lxml_xpath.py
// (lxml over an html5lib tree) and frozen.
const char* kDoc = "<html><head><title>Forum</title></head><body>\n<div id=\"nav\"><a class=\"link home\" href=\"/\">Home</a><a class=\"link\" href=\"/s/1\">Sec</a></div>\n<div class=\"block\"><div class=\"row\"><div class=\"cell\"><a class=\"title\" href=\"/t/1\">One</a><span>x</span></div></div>\n<div class=\"row\"><div class=\"cell\"><a class=\"title hot\" href=\"/t/2\">Two</a><a class=\"title\" href=\"/t/3\">Three</a></div></div></div>\n<ul><li data-k=\"a b\">1</li><li data-k=\"c\">2</li><li>3</li></ul>\n<div class=\"block\"><article class=\"post\"><p>p1</p></article><article class=\"post\"><p>p2</p><p>p3</p></article></div>\n<div><div><div><span id=\"deep\">d</span></div></div></div>\n</body></html>";

struct OracleRow {
  const char* expr;
  std::vector<std::string> paths;
};

const std::vector<OracleRow> kRows = {
    {"//a", {"/html[1]/body[1]/div[1]/a[1]", "/html[1]/body[1]/div[1]/a[2]", "/html[1]/body[1]/div[2]/div[1]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//div/a", {"/html[1]/body[1]/div[1]/a[1]", "/html[1]/body[1]/div[1]/a[2]", "/html[1]/body[1]/div[2]/div[1]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"/html/body/div[2]/div[2]/div/a[2]", {"/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//div[@class='row']//a", {"/html[1]/body[1]/div[2]/div[1]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//a[contains(@href,'/t/')]", {"/html[1]/body[1]/div[2]/div[1]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//*[contains(concat(' ',normalize-space(@class),' '),' title ')]", {"/html[1]/body[1]/div[2]/div[1]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[1]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//a[contains(concat(' ',normalize-space(@class),' '),' title ')][2]", {"/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//a[2]", {"/html[1]/body[1]/div[1]/a[2]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]"}},
    {"//li[@data-k='c']", {"/html[1]/body[1]/ul[1]/li[2]"}},
    {"//li[2]", {"/html[1]/body[1]/ul[1]/li[2]"}},
    {"//*[@id='deep']", {"/html[1]/body[1]/div[4]/div[1]/div[1]/span[1]"}},
    {"//div//div/span", {"/html[1]/body[1]/div[2]/div[1]/div[1]/span[1]", "/html[1]/body[1]/div[4]/div[1]/div[1]/span[1]"}},
    {"//article/p[1]", {"/html[1]/body[1]/div[3]/article[1]/p[1]", "/html[1]/body[1]/div[3]/article[2]/p[1]"}},
    {"//article//p", {"/html[1]/body[1]/div[3]/article[1]/p[1]", "/html[1]/body[1]/div[3]/article[2]/p[1]", "/html[1]/body[1]/div[3]/article[2]/p[2]"}},
    {"//p | //a[@class='link']", {"/html[1]/body[1]/div[1]/a[2]", "/html[1]/body[1]/div[3]/article[1]/p[1]", "/html[1]/body[1]/div[3]/article[2]/p[1]", "/html[1]/body[1]/div[3]/article[2]/p[2]"}},
    {"/html/body/*[3]/li", {"/html[1]/body[1]/ul[1]/li[1]", "/html[1]/body[1]/ul[1]/li[2]", "/html[1]/body[1]/ul[1]/li[3]"}},
    {"//div[@class='block'][2]/article[2]/p[2]", {"/html[1]/body[1]/div[3]/article[2]/p[2]"}},
    {"//*[2]", {"/html[1]/body[1]", "/html[1]/body[1]/div[1]/a[2]", "/html[1]/body[1]/div[2]", "/html[1]/body[1]/div[2]/div[1]/div[1]/span[1]", "/html[1]/body[1]/div[2]/div[2]", "/html[1]/body[1]/div[2]/div[2]/div[1]/a[2]", "/html[1]/body[1]/ul[1]/li[2]", "/html[1]/body[1]/div[3]/article[2]", "/html[1]/body[1]/div[3]/article[2]/p[2]"}},
    {"//nothing", {}},
};

std::vector<std::string> paths_of(const DomSnapshot& snap, const std::vector<NodeRef>& nodes) {
  std::vector<std::string> out;
  for (const auto& n : nodes) out.push_back(absolute_path(snap, n).to_string());
  return out;
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

}  // namespace

TEST(XPathEval, MatchesLxmlOracle) {
  auto snap = parse_snapshot(kDoc, "u");
  for (const auto& row : kRows) {
    SCOPED_TRACE(row.expr);
    EXPECT_EQ(paths_of(snap, evaluate_xpath(snap, row.expr)), row.paths);
  }
}

TEST(XPathParse, CanonicalRoundTrip) {
  auto snap = parse_snapshot(kDoc, "u");
  for (const auto& row : kRows) {
    auto e = XPathExpr::parse(row.expr);
    auto again = XPathExpr::parse(e.canonical());
    EXPECT_EQ(e, again) << row.expr;
    EXPECT_EQ(again.canonical(), e.canonical());
  }
  EXPECT_EQ(XPathExpr::parse("//*[@data-xf-init=\"preview-tooltip\"]").canonical(),
            "//*[@data-xf-init='preview-tooltip']");
  EXPECT_EQ(XPathExpr::parse("//a[@title=\"it's\"]").canonical(), "//a[@title=\"it's\"]");
  EXPECT_EQ(XPathExpr::parse(" //DIV [ 2 ] ").canonical(), "//div[2]");
}

TEST(XPathParse, RejectsUnsupportedNamingToken) {
  struct Bad {
    const char* expr;
    const char* token;
  };
  const Bad bad[] = {
      {"//a[text()='x']", "text()"},
      {"//a/..", ".."},
      {"//a[last()]", "last()"},
      {"//a[@href]", "]"},
      {"a/b", "a"},
      {"//a[0]", "0"},
      {"//following-sibling::a", "following-sibling"},
      {"//a[position()>1]", "position()"},
      {"//a[", ""},
  };
  for (const auto& b : bad) {
    SCOPED_TRACE(b.expr);
    try {
      XPathExpr::parse(b.expr);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnsupportedSyntax);
      if (*b.token) EXPECT_NE(std::string(e.what()).find(std::string("'") + b.token + "'"), std::string::npos)
          << e.what();
    }
  }
  EXPECT_EQ(code_of([] { XPathExpr::parse(""); }), ErrorCode::UnsupportedSyntax);
}

TEST(XPathLiteral, Quoting) {
  EXPECT_EQ(quote_literal("a"), "'a'");
  EXPECT_EQ(quote_literal("it's"), "\"it's\"");
  EXPECT_EQ(quote_literal("both'\""), "");
}

// Property: the indexed absolute path of any element, read as an
// expression, selects exactly that element.
TEST(XPathProperty, AbsolutePathSelectsItself) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> kids(0, 4), tag(0, 3);
  const char* tags[] = {"div", "span", "a", "p"};
  for (int iter = 0; iter < 100; ++iter) {
    std::string html = "<body>";
    std::function<void(int)> gen = [&](int d) {
      int n = d > 3 ? 0 : kids(rng);
      for (int i = 0; i < n; ++i) {
        const char* t = tags[tag(rng)];
        html += std::string("<") + t + ">";
        gen(d + 1);
        html += std::string("</") + t + ">";
      }
    };
    gen(0);
    html += "</body>";
    auto snap = parse_snapshot(html, "u");
    for (const auto& el : snap.elements()) {
      auto p = absolute_path(snap, el).to_string();
      auto res = evaluate_xpath(snap, p);
      ASSERT_EQ(res.size(), 1u) << p;
      EXPECT_EQ(res[0], el);
    }
  }
}

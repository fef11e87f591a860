#include <gtest/gtest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/url.hpp"
#include "forumcrawl/webdriver.hpp"
#include "forumcrawl/xpath.hpp"

using namespace forumcrawl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// httplib server on an ephemeral loopback port, run on its own thread.
struct LocalServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  void start() {
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~LocalServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
  std::string origin() const { return "http://127.0.0.1:" + std::to_string(port); }
};

/// Minimal W3C WebDriver stand-in that loads pages over HTTP and answers
/// element queries with the library's own XPath evaluator.
class MockDriver {
 public:
  LocalServer http;
  json last_capabilities;
  std::map<std::string, std::string> storage;
  std::map<std::string, std::string> form;
  bool masked = false;
  std::string url;
  std::string html;

  MockDriver() {
    auto& s = http.server;
    s.Post("/session", [this](const httplib::Request& req, httplib::Response& res) {
      last_capabilities = json::parse(req.body);
      reply(res, {{"sessionId", "mock-1"}, {"capabilities", json::object()}});
    });
    s.Delete(R"(/session/([^/]+))", [this](const httplib::Request&, httplib::Response& res) { reply(res, nullptr); });
    s.Post(R"(/session/([^/]+)/url)", [this](const httplib::Request& req, httplib::Response& res) {
      if (!navigate(json::parse(req.body).at("url").get<std::string>()))
        return error(res, 500, "unknown error", "Reached error page: about:neterror?e=connectionFailure");
      reply(res, nullptr);
    });
    s.Get(R"(/session/([^/]+)/url)", [this](const httplib::Request&, httplib::Response& res) { reply(res, url); });
    s.Get(R"(/session/([^/]+)/source)", [this](const httplib::Request&, httplib::Response& res) { reply(res, html); });
    s.Post(R"(/session/([^/]+)/execute/sync)", [this](const httplib::Request& req, httplib::Response& res) {
      auto script = json::parse(req.body).at("script").get<std::string>();
      if (script.find("readyState") != std::string::npos) return reply(res, json::array({"complete", 0}));
      if (script.find("navigator.webdriver") != std::string::npos) {
        masked = true;
        return reply(res, nullptr);
      }
      if (script.find("initiatorType") != std::string::npos) {
        json names = json::array();
        bool images_off = last_capabilities.dump().find("permissions.default.image") != std::string::npos;
        auto snap = parse_snapshot(html, url);
        if (!images_off)
          for (const auto& img : evaluate_xpath(snap, "//img"))
            names.push_back(resolve_url(url, img.attribute("src").value_or("")));
        return reply(res, names);
      }
      reply(res, nullptr);
    });
    s.Post(R"(/session/([^/]+)/execute/async)", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = json::parse(req.body);
      auto script = body.at("script").get<std::string>();
      if (script.find("storage") != std::string::npos) {
        storage[body["args"][0].get<std::string>()] = body["args"][1].get<std::string>();
        return reply(res, nullptr);
      }
      if (script.find("throw") != std::string::npos) return reply(res, "Error: boom");
      reply(res, nullptr);
    });
    s.Post(R"(/session/([^/]+)/element)", [this](const httplib::Request& req, httplib::Response& res) {
      auto xp = json::parse(req.body).at("value").get<std::string>();
      auto nodes = evaluate_xpath(parse_snapshot(html, url), xp);
      if (nodes.empty()) return error(res, 404, "no such element", "Unable to locate element: " + xp);
      reply(res, {{"element-6066-11e4-a52e-4f735466cecf", xp}});
    });
    s.Post(R"(/session/([^/]+)/element/(.+)/click)", [this](const httplib::Request& req, httplib::Response& res) {
      auto snap = parse_snapshot(html, url);
      auto node = node_at(snap, AbsolutePath::parse(req.matches[2].str()));
      if (!node) return error(res, 404, "stale element reference", "gone");
      if (node->tag() == "a" && node->attribute("href")) navigate(resolve_url(url, *node->attribute("href")));
      reply(res, nullptr);
    });
    s.Post(R"(/session/([^/]+)/element/(.+)/clear)", [this](const httplib::Request&, httplib::Response& res) {
      reply(res, nullptr);
    });
    s.Post(R"(/session/([^/]+)/element/(.+)/value)", [this](const httplib::Request& req, httplib::Response& res) {
      form[req.matches[2].str()] = json::parse(req.body).at("text").get<std::string>();
      reply(res, nullptr);
    });
    http.start();
  }

 private:
  bool navigate(const std::string& target) {
    Url u = Url::parse(target);
    httplib::Client c(u.origin());
    c.set_connection_timeout(1);
    auto r = c.Get(u.path.empty() ? "/" : u.path);
    if (!r) return false;
    url = target;
    html = r->body;
    return true;
  }
  static void reply(httplib::Response& res, const json& value) {
    res.set_content(json{{"value", value}}.dump(), "application/json");
  }
  static void error(httplib::Response& res, int status, const std::string& err, const std::string& msg) {
    res.status = status;
    res.set_content(json{{"value", {{"error", err}, {"message", msg}, {"stacktrace", ""}}}}.dump(), "application/json");
  }
};

struct StaticSite {
  fs::path root;
  LocalServer http;

  StaticSite() {
    root = fs::temp_directory_path() / ("forumcrawl_wd_" + std::to_string(::getpid()));
    fs::remove_all(root);
    write(root / "index.html",
          "<!DOCTYPE html><html><head><title>Home</title></head><body><div class=\"p-nav\">"
          "<a href=\"/forums/a/\">Section A</a></div>\n<table><tr><td>cell</td></tr></table>"
          "<p>unclosed <b>bold <i>both</b> italic</i></body></html>");
    write(root / "forums/a/index.html",
          "<html><body><div class=\"list\"><a class=\"t\" href=\"/threads/1/\">T1</a></div>"
          "<img src=\"/img/a.png\"><a class=\"next\" href=\"page-2.html\">Next</a></body></html>");
    write(root / "forums/a/page-2.html", "<html><body><p>second</p></body></html>");
    write(root / "threads/1/index.html",
          "<html><body><article class=\"message\"><div class=\"bbWrapper\">Hello &amp; bye</div></article></body></html>");
    write(root / "img/a.png", "PNG");
    http.server.set_mount_point("/", root.string());
    http.start();
  }
  ~StaticSite() { fs::remove_all(root); }
};

WebDriverOptions options_for(const MockDriver& d) {
  WebDriverOptions o;
  o.endpoint = d.http.origin();
  o.quiescence = std::chrono::milliseconds(0);
  o.poll_interval = std::chrono::milliseconds(1);
  o.load_timeout = std::chrono::milliseconds(2000);
  return o;
}

Locator loc(const std::string& expr) { return Locator{XPathExpr::parse(expr), Strategy::Manual, {}, {}}; }

}  // namespace

TEST(WebDriver, CapabilitiesCarryProxyImagesAndMasking) {
  WebDriverOptions o;
  o.proxy = "socks5://127.0.0.1:9050";
  auto caps = webdriver_capabilities(o)["capabilities"]["alwaysMatch"];
  EXPECT_EQ(caps["proxy"]["socksProxy"], "127.0.0.1:9050");
  EXPECT_EQ(caps["proxy"]["socksVersion"], 5);
  EXPECT_EQ(caps["moz:firefoxOptions"]["prefs"]["permissions.default.image"], 2);
  EXPECT_EQ(caps["moz:firefoxOptions"]["prefs"]["dom.webdriver.enabled"], false);
  o.images_enabled = true;
  o.browser = "chrome";
  caps = webdriver_capabilities(o)["capabilities"]["alwaysMatch"];
  EXPECT_FALSE(caps["goog:chromeOptions"].contains("prefs"));
  EXPECT_EQ(caps["goog:chromeOptions"]["excludeSwitches"][0], "enable-automation");
}

TEST(WebDriver, SnapshotsMatchFixtureAdapter) {
  StaticSite site;
  MockDriver driver;
  WebDriverAdapter live(options_for(driver));
  FixtureManifest m;
  m.base_url = site.http.origin();
  FixtureAdapter fixture(std::make_shared<FixtureSite>(site.root, m));
  for (const auto* path : {"/", "/forums/a/", "/forums/a/page-2.html", "/threads/1/"}) {
    auto url = site.http.origin() + path;
    auto a = live.open(url);
    auto b = fixture.open(url);
    EXPECT_TRUE(structurally_equal(a.snapshot, b.snapshot)) << path;
    EXPECT_EQ(a.current_url, url);
  }
}

TEST(WebDriver, ClickNavigatesAndLogsOncePerAction) {
  StaticSite site;
  MockDriver driver;
  WebDriverAdapter a(options_for(driver));
  a.open(site.http.origin() + "/forums/a/");
  auto h = a.click(loc("//a[@class='next']"));
  EXPECT_EQ(h.current_url, site.http.origin() + "/forums/a/page-2.html");
  EXPECT_EQ(evaluate_xpath(h.snapshot, "//p").size(), 1u);
  try {
    a.click(loc("//a[@class='next']"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].action, "open");
  EXPECT_EQ(log[1].action, "click");
  for (const auto& e : log) EXPECT_NE(e.action, "image");
}

TEST(WebDriver, ClickSkipsIgnoredMatches) {
  StaticSite site;
  MockDriver driver;
  WebDriverAdapter a(options_for(driver));
  a.open(site.http.origin() + "/forums/a/");
  Locator l = loc("//a");
  l.ignore.insert("/html[1]/body[1]/div[1]/a[1]");
  auto h = a.click(l);
  EXPECT_EQ(h.current_url, site.http.origin() + "/forums/a/page-2.html");
}

TEST(WebDriver, ImageEntriesOnlyWhenEnabled) {
  StaticSite site;
  MockDriver driver;
  auto o = options_for(driver);
  o.images_enabled = true;
  WebDriverAdapter a(o);
  a.open(site.http.origin() + "/forums/a/");
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[1].action, "image");
  EXPECT_EQ(log[1].url, site.http.origin() + "/img/a.png");
}

TEST(WebDriver, FillSendsValueWithoutLogging) {
  StaticSite site;
  MockDriver driver;
  WebDriverAdapter a(options_for(driver));
  a.open(site.http.origin() + "/threads/1/");
  a.drain_log();
  a.fill(loc("//div[@class='bbWrapper']"), "hunter2");
  EXPECT_EQ(driver.form.begin()->second, "hunter2");
  EXPECT_TRUE(a.drain_log().empty());
}

TEST(WebDriver, UnreachablePageIsNetworkError) {
  MockDriver driver;
  WebDriverAdapter a(options_for(driver));
  try {
    a.open("http://127.0.0.1:1/");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NetworkError);
  }
  auto log = a.drain_log();
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log[0].outcome, "NetworkError");
}

TEST(WebDriver, ScriptsTicketsAndMasking) {
  StaticSite site;
  MockDriver driver;
  WebDriverAdapter a(options_for(driver));
  a.open(site.http.origin() + "/");
  EXPECT_NO_THROW(a.execute_script("await new Promise(r => setTimeout(r, 10));"));
  try {
    a.execute_script("throw new Error('boom')");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScriptError);
    EXPECT_EQ(e.message(), "Error: boom");
  }
  a.inject_tickets({{{"cf-commitment-2.58", "c"}, {"cf-tokens", "t"}}});
  EXPECT_EQ(driver.storage.at("cf-tokens"), "t");
  EXPECT_EQ(driver.storage.size(), 2u);
  a.mask_automation();
  EXPECT_TRUE(driver.masked);
}

TEST(WebDriver, RefusedEndpointIsNetworkError) {
  WebDriverOptions o;
  o.endpoint = "http://127.0.0.1:1";
  try {
    WebDriverAdapter a(o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NetworkError);
  }
}

#include "forumcrawl/webdriver.hpp"

#include <httplib.h>

#include <thread>

#include "forumcrawl/error.hpp"
#include "forumcrawl/url.hpp"

namespace forumcrawl {

using nlohmann::json;

namespace {

constexpr const char* kElementKey = "element-6066-11e4-a52e-4f735466cecf";

constexpr const char* kLoadProbe =
    "return [document.readyState, performance.getEntriesByType('resource').length];";

constexpr const char* kMaskScript =
    "try { Object.defineProperty(Navigator.prototype, 'webdriver', {get: () => undefined, configurable: true}); } "
    "catch (e) {} return navigator.webdriver === undefined ? null : String(navigator.webdriver);";

constexpr const char* kImageProbe =
    "return performance.getEntriesByType('resource').filter(e => e.initiatorType === 'img').map(e => e.name);";

constexpr const char* kAsyncWrapper =
    "const __done = arguments[arguments.length - 1];\n"
    "(async () => {\n%SOURCE%\n})().then(() => __done(null), e => __done(String(e)));";

constexpr const char* kTicketScript =
    "const [k, v, done] = arguments;\n"
    "try {\n"
    "  const ext = (typeof browser !== 'undefined' && browser.storage) ? browser :\n"
    "              (typeof chrome !== 'undefined' && chrome.storage) ? chrome : null;\n"
    "  if (ext) { ext.storage.local.set({[k]: v}).then(() => done(null), e => done(String(e))); }\n"
    "  else { window.localStorage.setItem(k, v); done(null); }\n"
    "} catch (e) { done(String(e)); }";

ErrorCode code_for(const std::string& wd_error, const std::string& message) {
  if (wd_error == "timeout" || wd_error == "script timeout") return ErrorCode::Timeout;
  if (wd_error == "no such element" || wd_error == "stale element reference" ||
      wd_error == "element not interactable")
    return ErrorCode::NotFound;
  if (wd_error == "javascript error") return ErrorCode::ScriptError;
  if (message.find("Reached error page") != std::string::npos || message.find("ERR_") != std::string::npos ||
      message.find("NS_ERROR") != std::string::npos)
    return ErrorCode::NetworkError;
  return ErrorCode::NetworkError;
}

std::string proxy_host_port(const std::string& proxy) {
  auto p = proxy;
  if (auto scheme = p.find("://"); scheme != std::string::npos) p = p.substr(scheme + 3);
  while (!p.empty() && p.back() == '/') p.pop_back();
  return p;
}

}  // namespace

struct WebDriverAdapter::Http {
  explicit Http(const std::string& endpoint) : client(endpoint) {}
  httplib::Client client;
};

json webdriver_capabilities(const WebDriverOptions& o) {
  json always = {{"browserName", o.browser},
                 {"pageLoadStrategy", "normal"},
                 {"timeouts", {{"pageLoad", o.load_timeout.count()}, {"script", o.load_timeout.count()}}}};
  if (o.proxy)
    always["proxy"] = {{"proxyType", "manual"}, {"socksProxy", proxy_host_port(*o.proxy)}, {"socksVersion", 5}};
  if (o.browser == "firefox") {
    json prefs = {{"dom.webdriver.enabled", false}, {"useAutomationExtension", false}};
    if (!o.images_enabled) prefs["permissions.default.image"] = 2;
    if (o.proxy) prefs["network.proxy.socks_remote_dns"] = true;
    json args = json::array();
    if (o.headless) args.push_back("-headless");
    always["moz:firefoxOptions"] = {{"prefs", prefs}, {"args", args}};
  } else {
    json args = json::array({"--disable-blink-features=AutomationControlled"});
    if (o.headless) args.push_back("--headless=new");
    json opts = {{"args", args}, {"excludeSwitches", json::array({"enable-automation"})}};
    if (!o.images_enabled) opts["prefs"] = {{"profile.managed_default_content_settings.images", 2}};
    always["goog:chromeOptions"] = opts;
  }
  return {{"capabilities", {{"alwaysMatch", always}}}};
}

WebDriverAdapter::WebDriverAdapter(WebDriverOptions options)
    : options_(std::move(options)), http_(std::make_unique<Http>(options_.endpoint)) {
  if (options_.now) now_ = options_.now;
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.load_timeout).count() + 10;
  http_->client.set_connection_timeout(5);
  http_->client.set_read_timeout(secs);
  http_->client.set_write_timeout(secs);
  auto value = command("POST", "/session", webdriver_capabilities(options_));
  session_ = value.value("sessionId", "");
  if (session_.empty()) throw Error(ErrorCode::NetworkError, "WebDriver returned no session id");
}

WebDriverAdapter::~WebDriverAdapter() {
  try {
    close();
  } catch (...) {
  }
}

json WebDriverAdapter::command(const std::string& method, const std::string& path, const json& body) {
  httplib::Result res{nullptr, httplib::Error::Unknown};
  std::string payload = body.is_null() ? "{}" : body.dump();
  if (method == "POST")
    res = http_->client.Post(path, payload, "application/json; charset=utf-8");
  else if (method == "DELETE")
    res = http_->client.Delete(path);
  else
    res = http_->client.Get(path);
  if (!res)
    throw Error(ErrorCode::NetworkError,
                "WebDriver endpoint " + options_.endpoint + ": " + httplib::to_string(res.error()));
  json doc = json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("value"))
    throw Error(ErrorCode::NetworkError, "malformed WebDriver response (HTTP " + std::to_string(res->status) + ")");
  const json& value = doc.at("value");
  if (res->status >= 400 || (value.is_object() && value.contains("error"))) {
    std::string err = value.value("error", "unknown error");
    std::string msg = value.value("message", "");
    throw Error(code_for(err, msg), err + ": " + msg);
  }
  return value;
}

json WebDriverAdapter::execute_sync(const std::string& script, const json& args) {
  return command("POST", "/session/" + session_ + "/execute/sync", {{"script", script}, {"args", args}});
}

json WebDriverAdapter::execute_async(const std::string& script, const json& args) {
  return command("POST", "/session/" + session_ + "/execute/async", {{"script", script}, {"args", args}});
}

void WebDriverAdapter::wait_for_load() {
  auto deadline = std::chrono::steady_clock::now() + options_.load_timeout;
  long last_count = -1;
  auto stable_since = std::chrono::steady_clock::now();
  while (true) {
    auto probe = execute_sync(kLoadProbe);
    bool complete = probe.is_array() && probe.size() == 2 && probe[0] == "complete";
    long count = probe.is_array() && probe.size() == 2 && probe[1].is_number() ? probe[1].get<long>() : -1;
    auto now = std::chrono::steady_clock::now();
    if (!complete || count != last_count) {
      last_count = count;
      stable_since = now;
    } else if (now - stable_since >= options_.quiescence) {
      return;
    }
    if (now >= deadline)
      throw Error(ErrorCode::Timeout,
                  "page did not settle within " + std::to_string(options_.load_timeout.count()) + " ms");
    std::this_thread::sleep_for(options_.poll_interval);
  }
}

void WebDriverAdapter::install_mask() {
  if (masked_) execute_sync(kMaskScript);
}

void WebDriverAdapter::log_images() {
  if (!options_.images_enabled) return;
  auto names = execute_sync(kImageProbe);
  if (!names.is_array()) return;
  for (const auto& n : names)
    if (n.is_string()) log(n.get<std::string>(), "image", "ok");
}

PageHandle WebDriverAdapter::snapshot() {
  auto url = command("GET", "/session/" + session_ + "/url").get<std::string>();
  auto source = command("GET", "/session/" + session_ + "/source").get<std::string>();
  handle_ = PageHandle{session_, url, parse_snapshot(source, url, now_())};
  return *handle_;
}

PageHandle WebDriverAdapter::open(const std::string& url) {
  BusyGuard guard(*this);
  try {
    command("POST", "/session/" + session_ + "/url", {{"url", url}});
    wait_for_load();
    install_mask();
  } catch (const Error& e) {
    log(url, "open", std::string(to_string(e.code())));
    throw;
  }
  auto h = snapshot();
  log(url, "open", "ok");
  log_images();
  return h;
}

std::string WebDriverAdapter::element_for(const Locator& locator) {
  if (!handle_) throw Error(ErrorCode::NotFound, "no page is open");
  auto nodes = resolve(handle_->snapshot, locator);
  if (nodes.empty())
    throw Error(ErrorCode::NotFound, "'" + locator.expr.source() + "' matches nothing on " + handle_->current_url);
  // Address the chosen node by its absolute path so ignored matches are skipped.
  auto path = absolute_path(handle_->snapshot, nodes.front()).to_string();
  auto found = command("POST", "/session/" + session_ + "/element", {{"using", "xpath"}, {"value", path}});
  return found.at(kElementKey).get<std::string>();
}

PageHandle WebDriverAdapter::click(const Locator& locator) {
  BusyGuard guard(*this);
  auto element = element_for(locator);
  std::string before = handle_->current_url;
  try {
    command("POST", "/session/" + session_ + "/element/" + element + "/click", json::object());
    wait_for_load();
    install_mask();
  } catch (const Error& e) {
    log(before, "click", std::string(to_string(e.code())));
    throw;
  }
  auto h = snapshot();
  log(h.current_url, "click", "ok");
  return h;
}

void WebDriverAdapter::fill(const Locator& locator, const std::string& value) {
  BusyGuard guard(*this);
  auto element = element_for(locator);
  command("POST", "/session/" + session_ + "/element/" + element + "/clear", json::object());
  command("POST", "/session/" + session_ + "/element/" + element + "/value", {{"text", value}});
}

PageHandle WebDriverAdapter::execute_script(const std::string& source) {
  BusyGuard guard(*this);
  if (!handle_) throw Error(ErrorCode::ScriptError, "no page is open");
  if (source.find_first_not_of(" \t\r\n") == std::string::npos) return *handle_;
  std::string wrapped = kAsyncWrapper;
  wrapped.replace(wrapped.find("%SOURCE%"), 8, source);
  json result;
  try {
    result = execute_async(wrapped);
  } catch (const Error& e) {
    log(handle_->current_url, "script", "ScriptError");
    throw Error(ErrorCode::ScriptError, e.message());
  }
  if (!result.is_null()) {
    log(handle_->current_url, "script", "ScriptError");
    throw Error(ErrorCode::ScriptError, result.is_string() ? result.get<std::string>() : result.dump());
  }
  wait_for_load();
  auto h = snapshot();
  log(h.current_url, "script", "ok");
  return h;
}

PageHandle WebDriverAdapter::refresh_snapshot() {
  BusyGuard guard(*this);
  return snapshot();
}

void WebDriverAdapter::inject_tickets(const TicketBundle& bundle) {
  BusyGuard guard(*this);
  if (bundle.pairs.empty()) return;
  if (options_.ticket_storage_url) {
    command("POST", "/session/" + session_ + "/url", {{"url", *options_.ticket_storage_url}});
    log(*options_.ticket_storage_url, "inject", "ok");
  }
  std::vector<std::string> failed;
  for (const auto& [k, v] : bundle.pairs) {
    if (k.empty()) {
      failed.push_back("(empty key)");
      continue;
    }
    try {
      auto r = execute_async(kTicketScript, json::array({k, v}));
      if (!r.is_null()) failed.push_back(k + " (" + (r.is_string() ? r.get<std::string>() : r.dump()) + ")");
    } catch (const Error& e) {
      failed.push_back(k + " (" + e.message() + ")");
    }
  }
  if (!failed.empty()) {
    std::string msg = "could not write ticket pairs:";
    for (const auto& f : failed) msg += " " + f;
    throw Error(ErrorCode::InjectionFailed, msg);
  }
}

void WebDriverAdapter::mask_automation() {
  BusyGuard guard(*this);
  masked_ = true;
  auto r = execute_sync(kMaskScript);
  if (!r.is_null()) throw Error(ErrorCode::MaskFailed, "navigator.webdriver still reads " + r.dump());
}

void WebDriverAdapter::set_images_enabled(bool enabled) {
  // Browser preferences are fixed at session start; only the fetch-log
  // reporting follows the flag afterwards.
  options_.images_enabled = enabled;
}

std::optional<PageHandle> WebDriverAdapter::current() const { return handle_; }

void WebDriverAdapter::close() {
  if (session_.empty()) return;
  auto id = std::move(session_);
  session_.clear();
  http_->client.Delete("/session/" + id);
}

LiveDomProvider WebDriverAdapter::live_provider() {
  return [this] {
    BusyGuard guard(*this);
    auto source = command("GET", "/session/" + session_ + "/source").get<std::string>();
    return parse_snapshot(source, handle_ ? handle_->current_url : "", now_());
  };
}

}  // namespace forumcrawl

#include "forumcrawl/fixture.hpp"

#include <fnmatch.h>

#include <fstream>
#include <regex>
#include <thread>

#include "forumcrawl/error.hpp"
#include "forumcrawl/url.hpp"
#include "forumcrawl/xpath.hpp"

namespace forumcrawl {

using nlohmann::json;

namespace {

constexpr std::string_view kHiddenOpen = "<script type=\"text/x-fixture-hidden\"";
constexpr std::string_view kCaptchaWidget = "<div class=\"g-recaptcha\" data-sitekey=\"fixture\"></div>";
constexpr std::string_view kInterstitial =
    "<!DOCTYPE html><html><head><title>Just a moment...</title></head><body>"
    "<div id=\"cf-challenge-running\">Checking your browser before accessing the forum.</div>"
    "<form id=\"challenge-form\" action=\"#\" method=\"POST\"></form></body></html>";
constexpr std::string_view kNotFound =
    "<!DOCTYPE html><html><head><title>404 Not Found</title></head><body><h1>Not Found</h1></body></html>";

const std::pair<FixtureBehavior::Kind, const char*> kKindNames[] = {
    {FixtureBehavior::Kind::RerandomizeIds, "rerandomize_ids"},
    {FixtureBehavior::Kind::FailFirst, "fail_first"},
    {FixtureBehavior::Kind::TicketGate, "ticket_gate"},
    {FixtureBehavior::Kind::MutateAfterVisit, "mutate_after_visit"},
    {FixtureBehavior::Kind::LiveMutation, "live_mutation"},
    {FixtureBehavior::Kind::Slow, "slow"},
    {FixtureBehavior::Kind::InlineCaptcha, "inline_captcha"},
    {FixtureBehavior::Kind::RequireLogin, "require_login"},
};

bool glob_match(const std::string& pattern, const std::string& path) {
  return fnmatch(pattern.c_str(), path.c_str(), 0) == 0;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  if (from.empty()) return;
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::NetworkError, "cannot read fixture file " + p.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string js_unquote(std::string_view lit) {
  std::string out;
  for (std::size_t i = 1; i + 1 < lit.size(); ++i) {
    char c = lit[i];
    if (c == '\\' && i + 2 < lit.size()) {
      char n = lit[++i];
      out += n == 'n' ? '\n' : n == 't' ? '\t' : n;
    } else {
      out += c;
    }
  }
  return out;
}

/// Splits at top-level ';' and newlines; throws ScriptError on unbalanced
/// quotes or brackets.
std::vector<std::string> split_statements(std::string_view src) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  int depth = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    if (quote) {
      cur += c;
      if (c == '\\' && i + 1 < src.size()) {
        cur += src[++i];
      } else if (c == quote) {
        quote = 0;
      } else if (c == '\n' && quote != '`') {
        throw Error(ErrorCode::ScriptError, "SyntaxError: unterminated string literal");
      }
      continue;
    }
    if (c == '"' || c == '\'' || c == '`') {
      quote = c;
      cur += c;
      continue;
    }
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') {
      if (--depth < 0) throw Error(ErrorCode::ScriptError, std::string("SyntaxError: unexpected token: '") + c + "'");
    }
    if (depth == 0 && (c == ';' || c == '\n')) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (quote) throw Error(ErrorCode::ScriptError, "SyntaxError: unterminated string literal");
  if (depth != 0) throw Error(ErrorCode::ScriptError, "SyntaxError: missing ) after argument list");
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

std::string strip_line_comments(std::string_view src) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= src.size()) {
    auto nl = src.find('\n', pos);
    auto line = src.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (trim(line).rfind("//", 0) != 0) {
      out += line;
      out += '\n';
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace

FixtureManifest manifest_from_json(const json& doc) {
  try {
    FixtureManifest m;
    m.base_url = doc.value("base_url", m.base_url);
    if (doc.contains("login") && !doc.at("login").is_null()) {
      const auto& l = doc.at("login");
      FixtureLogin login;
      login.page = l.value("page", login.page);
      login.action = l.value("action", login.action);
      login.username = l.at("username").get<std::string>();
      login.password = l.at("password").get<std::string>();
      login.success = l.value("success", login.success);
      login.username_field = l.value("username_field", login.username_field);
      login.password_field = l.value("password_field", login.password_field);
      m.login = login;
    }
    for (const auto& b : doc.value("behaviors", json::array())) {
      FixtureBehavior fb{};
      auto kind = b.at("kind").get<std::string>();
      bool known = false;
      for (const auto& [k, name] : kKindNames)
        if (kind == name) {
          fb.kind = k;
          known = true;
        }
      if (!known) throw Error(ErrorCode::InvalidDocument, "unknown fixture behavior '" + kind + "'");
      fb.pages = b.value("pages", "*");
      fb.count = b.value("count", 1);
      auto err = b.value("error", "network");
      fb.error = err == "timeout" ? ErrorCode::Timeout : ErrorCode::NetworkError;
      fb.required_keys = b.value("required_keys", std::vector<std::string>{});
      for (const auto& r : b.value("replace", json::array()))
        fb.replace.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
      fb.delay_ms = b.value("delay_ms", 0);
      m.behaviors.push_back(std::move(fb));
    }
    m.info = doc.value("info", json::object());
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("fixture manifest: ") + e.what());
  }
}

json manifest_to_json(const FixtureManifest& m) {
  json out = {{"base_url", m.base_url}, {"info", m.info}};
  if (m.login)
    out["login"] = {{"page", m.login->page},
                    {"action", m.login->action},
                    {"username", m.login->username},
                    {"password", m.login->password},
                    {"success", m.login->success},
                    {"username_field", m.login->username_field},
                    {"password_field", m.login->password_field}};
  json behaviors = json::array();
  for (const auto& b : m.behaviors) {
    json j = {{"pages", b.pages}};
    for (const auto& [k, name] : kKindNames)
      if (k == b.kind) j["kind"] = name;
    if (b.kind == FixtureBehavior::Kind::FailFirst) {
      j["count"] = b.count;
      j["error"] = b.error == ErrorCode::Timeout ? "timeout" : "network";
    }
    if (!b.required_keys.empty()) j["required_keys"] = b.required_keys;
    if (!b.replace.empty()) {
      json r = json::array();
      for (const auto& [from, to] : b.replace) r.push_back({from, to});
      j["replace"] = r;
    }
    if (b.delay_ms) j["delay_ms"] = b.delay_ms;
    behaviors.push_back(std::move(j));
  }
  out["behaviors"] = behaviors;
  return out;
}

FixtureSite::FixtureSite(std::filesystem::path root) : root_(std::move(root)) {
  auto manifest_path = root_ / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    json doc = json::parse(read_file(manifest_path), nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorCode::InvalidDocument, manifest_path.string() + " is not valid JSON");
    manifest_ = manifest_from_json(doc);
  }
}

FixtureSite::FixtureSite(std::filesystem::path root, FixtureManifest manifest)
    : root_(std::move(root)), manifest_(std::move(manifest)) {}

std::string FixtureSite::url_for(std::string_view path) const { return resolve_url(manifest_.base_url + "/", path); }

std::optional<std::string> FixtureSite::path_of(std::string_view url) const {
  Url u = Url::parse(url);
  Url base = Url::parse(manifest_.base_url);
  if (u.scheme != base.scheme || u.authority != base.authority) return std::nullopt;
  return u.path.empty() ? "/" : u.path;
}

std::filesystem::path FixtureSite::file_for(std::string_view path) const {
  std::string p(path);
  if (p.find("..") != std::string::npos) return {};
  if (p.empty() || p.back() == '/') p += "index.html";
  else if (std::filesystem::path(p).extension().empty()) p += ".html";
  return root_ / p.substr(1);
}

int FixtureSite::bump(std::size_t behavior, const std::string& path) {
  std::lock_guard lock(mu_);
  return ++counters_[{behavior, path}];
}

int FixtureSite::visits(const std::string& path) const {
  std::lock_guard lock(mu_);
  auto it = visits_.find(path);
  return it == visits_.end() ? 0 : it->second;
}

int FixtureSite::record_visit(const std::string& path) {
  std::lock_guard lock(mu_);
  return ++visits_[path];
}

std::uint64_t FixtureSite::next_uid() {
  std::lock_guard lock(mu_);
  return ++uid_;
}

namespace {
std::atomic<int> g_fixture_sessions{0};
}

FixtureAdapter::FixtureAdapter(std::shared_ptr<FixtureSite> site, FixtureOptions options)
    : site_(std::move(site)), options_(std::move(options)) {
  if (options_.now) now_ = options_.now;
  session_id_ = "fixture-" + std::to_string(++g_fixture_sessions);
}

PageHandle FixtureAdapter::snapshot_current() {
  handle_ = PageHandle{session_id_, *url_, parse_snapshot(html_, *url_, now_())};
  return *handle_;
}

PageHandle FixtureAdapter::load(const std::string& url, const std::string& action) {
  if (closed_) throw Error(ErrorCode::NetworkError, "adapter session is closed");
  auto path = site_->path_of(url);
  if (!path) {
    log(url, action, "NetworkError");
    throw Error(ErrorCode::NetworkError, "host not reachable from the fixture: " + url);
  }
  const auto& behaviors = site_->manifest().behaviors;
  auto matching = [&](FixtureBehavior::Kind kind) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < behaviors.size(); ++i)
      if (behaviors[i].kind == kind && glob_match(behaviors[i].pages, *path)) out.push_back(i);
    return out;
  };

  for (auto i : matching(FixtureBehavior::Kind::Slow)) {
    auto delay = std::chrono::milliseconds(behaviors[i].delay_ms);
    if (delay > options_.load_timeout) {
      std::this_thread::sleep_for(options_.load_timeout);
      log(url, action, "Timeout");
      throw Error(ErrorCode::Timeout, "page load exceeded " + std::to_string(options_.load_timeout.count()) +
                                          " ms: " + url);
    }
    std::this_thread::sleep_for(delay);
  }
  for (auto i : matching(FixtureBehavior::Kind::FailFirst)) {
    if (site_->bump(i, *path) <= behaviors[i].count) {
      auto code = behaviors[i].error;
      log(url, action, std::string(to_string(code)));
      throw Error(code, "fixture fault injection on " + url);
    }
  }

  std::string outcome = "ok";
  std::string served_path = *path;
  if (!logged_in_ && site_->manifest().login && !matching(FixtureBehavior::Kind::RequireLogin).empty())
    served_path = site_->manifest().login->page;

  bool gated = false;
  for (auto i : matching(FixtureBehavior::Kind::TicketGate))
    for (const auto& key : behaviors[i].required_keys)
      if (!tickets_.count(key)) gated = true;

  if (gated) {
    html_ = kInterstitial;
    outcome = "interstitial";
  } else {
    auto file = site_->file_for(served_path);
    if (file.empty() || !std::filesystem::is_regular_file(file)) {
      html_ = kNotFound;
      outcome = "http_404";
    } else {
      html_ = read_file(file);
      int visit = site_->record_visit(*path);
      if (visit > 1)
        for (auto i : matching(FixtureBehavior::Kind::MutateAfterVisit))
          for (const auto& [from, to] : behaviors[i].replace) replace_all(html_, from, to);
      if (!matching(FixtureBehavior::Kind::RerandomizeIds).empty()) {
        auto stamp = std::chrono::duration_cast<std::chrono::seconds>(now_().time_since_epoch()).count();
        for (auto at = html_.find("{{XF_UID}}"); at != std::string::npos; at = html_.find("{{XF_UID}}", at))
          html_.replace(at, 10, "_xfUid-" + std::to_string(site_->next_uid()) + "-" + std::to_string(stamp));
      }
      replace_all(html_, "{{WEBDRIVER}}", masked_ ? "undefined" : "true");
      captcha_pending_ = !matching(FixtureBehavior::Kind::InlineCaptcha).empty();
      if (captcha_pending_) {
        auto form = html_.find("<form");
        auto at = form != std::string::npos ? html_.find('>', form) : html_.find('>', html_.find("<body"));
        if (at != std::string::npos) html_.insert(at + 1, kCaptchaWidget);
      }
    }
  }
  url_ = url;
  actions_.clear();
  form_values_.clear();
  auto handle = snapshot_current();
  log(url, action, outcome);

  if (options_.images_enabled && outcome == "ok") {
    for (const auto& img : evaluate_xpath(handle.snapshot, "//img")) {
      auto src = img.attribute("src");
      if (!src || src->empty()) continue;
      auto img_url = resolve_url(url, *src);
      auto img_path = site_->path_of(img_url);
      bool ok = img_path && std::filesystem::is_regular_file(site_->root() / img_path->substr(1));
      log(img_url, "image", ok ? "ok" : "http_404");
    }
  }
  return handle;
}

PageHandle FixtureAdapter::open(const std::string& url) {
  BusyGuard guard(*this);
  return load(url, "open");
}

void FixtureAdapter::apply_reveals() {
  std::size_t pos = 0;
  while ((pos = html_.find(kHiddenOpen, pos)) != std::string::npos) {
    auto tag_end = html_.find('>', pos);
    auto close = html_.find("</script>", tag_end);
    if (tag_end == std::string::npos || close == std::string::npos) break;
    std::string tag = html_.substr(pos, tag_end - pos);
    std::set<std::string> requires_set;
    if (auto a = tag.find("data-requires=\""); a != std::string::npos) {
      auto start = a + 15;
      std::string list = tag.substr(start, tag.find('"', start) - start);
      std::size_t p = 0;
      while (p < list.size()) {
        auto sp = list.find(' ', p);
        auto tok = list.substr(p, sp == std::string::npos ? std::string::npos : sp - p);
        if (!tok.empty()) requires_set.insert(tok);
        if (sp == std::string::npos) break;
        p = sp + 1;
      }
    }
    bool satisfied = std::all_of(requires_set.begin(), requires_set.end(), [&](const auto& r) { return actions_.count(r) > 0; });
    if (satisfied) {
      std::string inner = html_.substr(tag_end + 1, close - tag_end - 1);
      html_.replace(pos, close + 9 - pos, inner);
      pos += inner.size();
    } else {
      pos = close + 9;
    }
  }
}

PageHandle FixtureAdapter::click_node(const NodeRef& target) {
  for (NodeRef n = target; n && n.is_element(); n = n.parent()) {
    if (auto act = n.attribute("data-fixture-action")) {
      actions_.insert(std::string(*act));
      apply_reveals();
      return snapshot_current();
    }
    if (n.tag() == "a") {
      if (auto href = n.attribute("href"); href && !href->empty() && href->front() != '#')
        return load(resolve_url(*url_, *href), "click");
      return snapshot_current();
    }
    bool submit = (n.tag() == "button" && n.attribute("type").value_or("submit") == "submit") ||
                  (n.tag() == "input" && n.attribute("type").value_or("") == "submit");
    if (submit) {
      NodeRef form = n.parent();
      while (form && form.is_element() && form.tag() != "form") form = form.parent();
      if (!form || !form.is_element()) return snapshot_current();
      auto target_url = resolve_url(*url_, form.attribute("action").value_or(""));
      const auto& login = site_->manifest().login;
      if (login && site_->path_of(target_url) == login->action) {
        bool ok = !captcha_pending_ && form_values_[login->username_field] == login->username &&
                  form_values_[login->password_field] == login->password;
        if (ok) logged_in_ = true;
        return load(site_->url_for(ok ? login->success : login->page), "login");
      }
      return load(target_url, "click");
    }
  }
  return snapshot_current();
}

PageHandle FixtureAdapter::click(const Locator& locator) {
  BusyGuard guard(*this);
  if (!handle_) throw Error(ErrorCode::NotFound, "no page is open");
  auto nodes = resolve(handle_->snapshot, locator);
  if (nodes.empty()) throw Error(ErrorCode::NotFound, "'" + locator.expr.source() + "' matches nothing on " + *url_);
  return click_node(nodes.front());
}

void FixtureAdapter::fill(const Locator& locator, const std::string& value) {
  BusyGuard guard(*this);
  if (!handle_) throw Error(ErrorCode::NotFound, "no page is open");
  auto nodes = resolve(handle_->snapshot, locator);
  if (nodes.empty()) throw Error(ErrorCode::NotFound, "'" + locator.expr.source() + "' matches nothing on " + *url_);
  const auto& n = nodes.front();
  if (n.tag() != "input" && n.tag() != "textarea")
    throw Error(ErrorCode::NotFound, "'" + locator.expr.source() + "' does not select a form field");
  auto key = n.attribute("name").value_or(n.attribute("id").value_or(""));
  form_values_[std::string(key)] = value;
}

PageHandle FixtureAdapter::execute_script(const std::string& source) {
  BusyGuard guard(*this);
  if (!handle_) throw Error(ErrorCode::ScriptError, "no page is open");
  static const std::regex wrapper(
      R"(^\(\s*async\s*(?:\(\s*\)\s*=>|function\s*\(\s*\))\s*\{([\s\S]*)\}\s*\)\s*\(\s*\)\s*;?\s*$)");
  static const std::regex click_re(
      R"(^(?:await\s+)?document\.evaluate\(\s*("(?:[^"\\]|\\.)*"|'(?:[^'\\]|\\.)*')\s*,\s*document\s*,\s*null\s*,\s*XPathResult\.FIRST_ORDERED_NODE_TYPE\s*,\s*null\s*\)\.singleNodeValue\.click\(\s*\)$)");
  static const std::regex wait_re(
      R"(^await\s+new\s+Promise\(\s*\(?\s*(\w+)\s*\)?\s*=>\s*setTimeout\(\s*(\w+)\s*,\s*(\w+)\s*\)\s*\)$)");
  static const std::regex decl_re(R"(^(?:const|let|var)\s+(\w+)\s*=\s*(\d+)$)");

  auto fail = [&](const std::string& message) {
    log(*url_, "script", "ScriptError");
    throw Error(ErrorCode::ScriptError, message);
  };
  std::string body = strip_line_comments(source);
  std::smatch m;
  std::string trimmed = trim(body);
  if (std::regex_match(trimmed, m, wrapper)) body = m[1].str();
  std::vector<std::string> statements;
  try {
    statements = split_statements(body);
  } catch (const Error& e) {
    fail(e.message());
  }

  std::map<std::string, long> vars;
  bool dirty = false;
  for (const auto& st : statements) {
    if (std::regex_match(st, m, click_re)) {
      std::string xp = js_unquote(m[1].str());
      std::vector<NodeRef> nodes;
      try {
        nodes = evaluate_xpath(handle_->snapshot, xp);
      } catch (const Error&) {
        fail("SyntaxError: Document.evaluate: The expression is not a legal expression");
      }
      if (nodes.empty()) fail("TypeError: document.evaluate(...).singleNodeValue is null");
      click_node(nodes.front());
      dirty = true;
    } else if (std::regex_match(st, m, wait_re)) {
      if (m[1].str() != m[2].str()) fail("ReferenceError: " + m[2].str() + " is not defined");
      auto arg = m[3].str();
      if (!std::all_of(arg.begin(), arg.end(), ::isdigit) && !vars.count(arg))
        fail("ReferenceError: " + arg + " is not defined");
    } else if (std::regex_match(st, m, decl_re)) {
      vars[m[1].str()] = std::stol(m[2].str());
    } else {
      fail("SyntaxError: unsupported statement in fixture page script: " + st.substr(0, 80));
    }
  }
  if (!statements.empty()) log(*url_, "script", "ok");
  return dirty ? *handle_ : snapshot_current();
}

PageHandle FixtureAdapter::refresh_snapshot() {
  BusyGuard guard(*this);
  if (!handle_) throw Error(ErrorCode::NotFound, "no page is open");
  if (captcha_pending_) {
    replace_all(html_, kCaptchaWidget, "");
    captcha_pending_ = false;
  }
  return snapshot_current();
}

void FixtureAdapter::inject_tickets(const TicketBundle& bundle) {
  std::vector<std::string> failed;
  for (const auto& [k, v] : bundle.pairs) {
    if (k.empty()) {
      failed.push_back("(empty key)");
      continue;
    }
    tickets_[k] = v;
  }
  if (!failed.empty()) {
    std::string msg = "could not write ticket pairs:";
    for (const auto& f : failed) msg += " " + f;
    throw Error(ErrorCode::InjectionFailed, msg);
  }
}

void FixtureAdapter::mask_automation() { masked_ = true; }

void FixtureAdapter::set_images_enabled(bool enabled) { options_.images_enabled = enabled; }

std::optional<PageHandle> FixtureAdapter::current() const { return handle_; }

void FixtureAdapter::close() {
  closed_ = true;
  handle_.reset();
}

DomSnapshot FixtureAdapter::live_dom() const {
  if (!handle_) throw Error(ErrorCode::NotFound, "no page is open");
  std::string html = html_;
  auto path = site_->path_of(*url_).value_or("");
  for (const auto& b : site_->manifest().behaviors)
    if (b.kind == FixtureBehavior::Kind::LiveMutation && glob_match(b.pages, path))
      for (const auto& [from, to] : b.replace) replace_all(html, from, to);
  return parse_snapshot(html, *url_, now_());
}

LiveDomProvider FixtureAdapter::live_provider() {
  return [this] { return live_dom(); };
}

}  // namespace forumcrawl

#include "forumcrawl/config.hpp"

#include <fstream>
#include <sstream>

#include "forumcrawl/error.hpp"

namespace forumcrawl {

using nlohmann::json;

namespace {

const char* mode_name(KeywordPolicy::Mode mode) {
  return mode == KeywordPolicy::Mode::WhitelistOnly ? "whitelist_only" : "all_except_blacklist";
}

json schedule_to_json(const Schedule& s) {
  json days = json::object();
  for (std::size_t d = 0; d < s.days.size(); ++d) {
    json windows = json::array();
    for (const auto& w : s.days[d]) {
      json breaks = json::array();
      for (const auto& b : w.breaks) breaks.push_back({{"start", b.start.to_string()}, {"end", b.end.to_string()}});
      windows.push_back({{"start", w.start.to_string()}, {"end", w.end.to_string()}, {"breaks", breaks}});
    }
    days[kWeekdayNames[d]] = windows;
  }
  json out = {{"days", days},
              {"session_variance_min", s.session_variance_min},
              {"break_variance_min", s.break_variance_min},
              {"interrupt_min_gap_min", s.interrupt_min_gap_min}};
  out["interrupt_duration_min"] =
      s.interrupt_duration_min
          ? json::array({s.interrupt_duration_min->first, s.interrupt_duration_min->second})
          : json(nullptr);
  return out;
}

Schedule schedule_from_json(const json& j, const std::string& timezone) {
  Schedule s;
  s.timezone = timezone;
  if (j.contains("days")) {
    for (auto it = j.at("days").begin(); it != j.at("days").end(); ++it) {
      std::size_t d = 0;
      while (d < kWeekdayNames.size() && it.key() != kWeekdayNames[d]) ++d;
      if (d == kWeekdayNames.size()) throw Error(ErrorCode::InvalidDocument, "unknown weekday '" + it.key() + "'");
      for (const auto& w : it.value()) {
        WorkWindow window{LocalTime::parse(w.at("start").get<std::string>()),
                          LocalTime::parse(w.at("end").get<std::string>()),
                          {}};
        for (const auto& b : w.value("breaks", json::array()))
          window.breaks.push_back(
              {LocalTime::parse(b.at("start").get<std::string>()), LocalTime::parse(b.at("end").get<std::string>())});
        s.days[d].push_back(std::move(window));
      }
    }
  }
  s.session_variance_min = j.value("session_variance_min", 0);
  s.break_variance_min = j.value("break_variance_min", 0);
  s.interrupt_min_gap_min = j.value("interrupt_min_gap_min", 0);
  if (j.contains("interrupt_duration_min") && !j.at("interrupt_duration_min").is_null()) {
    const auto& r = j.at("interrupt_duration_min");
    s.interrupt_duration_min = std::make_pair(r.at(0).get<int>(), r.at(1).get<int>());
  }
  s.validate();
  return s;
}

std::vector<std::string> keyword_list(const json& j, const char* key) {
  std::vector<std::string> out;
  for (const auto& k : j.value(key, json::array())) {
    auto word = k.get<std::string>();
    if (word.empty()) throw Error(ErrorCode::InvalidDocument, std::string(key) + " contains an empty keyword");
    out.push_back(std::move(word));
  }
  return out;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

void resolve_relative(std::string& value, const std::filesystem::path& base) {
  if (value.empty()) return;
  std::filesystem::path p(value);
  if (p.is_relative()) value = (base / p).lexically_normal().string();
}

}  // namespace

std::optional<std::string> PageUrls::for_page(PageType type) const {
  switch (type) {
    case PageType::Login: return login.empty() ? std::nullopt : std::optional(login);
    case PageType::Home: return home.empty() ? std::nullopt : std::optional(home);
    case PageType::Section: return section.empty() ? std::nullopt : std::optional(section);
    case PageType::Subsection: return subsection && !subsection->empty() ? subsection : std::nullopt;
    case PageType::Thread: return thread.empty() ? std::nullopt : std::optional(thread);
  }
  return std::nullopt;
}

json configuration_to_json(const CrawlConfiguration& c, bool redact_secrets) {
  json urls = {{"login", c.urls.login}, {"home", c.urls.home}, {"section", c.urls.section}, {"thread", c.urls.thread}};
  urls["subsection"] = c.urls.subsection ? json(*c.urls.subsection) : json(nullptr);
  json out = {
      {"schema_version", kConfigSchemaVersion},
      {"forum_id", c.forum_id},
      {"urls", urls},
      {"credentials", {{"username", c.credentials.username}, {"secret", redact_secrets ? "***" : c.credentials.secret}}},
      {"timezone", c.schedule.timezone},
      {"wpm_range", json::array({c.wpm_range.first, c.wpm_range.second})},
      {"keyword_policy",
       {{"mode", mode_name(c.keyword_policy.mode)},
        {"blacklist", c.keyword_policy.blacklist},
        {"whitelist", c.keyword_policy.whitelist}}},
      {"schedule", schedule_to_json(c.schedule)},
      {"download_images", c.download_images},
      {"proxy", c.proxy ? json(*c.proxy) : json(nullptr)},
      {"needs_cf_tickets", c.needs_cf_tickets},
      {"load_timeout_s", c.load_timeout_s},
      {"skip_training", c.skip_training},
      {"mask_automation", c.mask_automation},
      {"driver",
       {{"kind", c.driver.kind == DriverKind::WebDriver ? "webdriver" : "fixture"},
        {"fixture_root", c.driver.fixture_root},
        {"webdriver_url", c.driver.webdriver_url},
        {"headless", c.driver.headless}}},
      {"store_path", c.store_path},
      {"archive_dir", c.archive_dir},
      {"profile_path", c.profile_path},
  };
  return out;
}

CrawlConfiguration configuration_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw Error(ErrorCode::SchemaMismatch, "configuration lacks an integer schema_version");
  int version = doc.at("schema_version").get<int>();
  if (version != kConfigSchemaVersion)
    throw Error(ErrorCode::SchemaMismatch, "configuration schema_version " + std::to_string(version) +
                                               " is not supported (expected " +
                                               std::to_string(kConfigSchemaVersion) + ")");
  try {
    CrawlConfiguration c;
    c.forum_id = doc.at("forum_id").get<std::string>();
    const auto& u = doc.at("urls");
    c.urls.login = u.value("login", "");
    c.urls.home = u.value("home", "");
    c.urls.section = u.value("section", "");
    c.urls.subsection = optional_string(u, "subsection");
    c.urls.thread = u.value("thread", "");
    if (doc.contains("credentials")) {
      c.credentials.username = doc.at("credentials").value("username", "");
      c.credentials.secret = doc.at("credentials").value("secret", "");
    }
    std::string tz = doc.value("timezone", "UTC");
    c.schedule = schedule_from_json(doc.value("schedule", json::object()), tz);
    if (doc.contains("wpm_range")) {
      const auto& w = doc.at("wpm_range");
      c.wpm_range = {w.at(0).get<double>(), w.at(1).get<double>()};
    }
    if (!(c.wpm_range.first > 0) || c.wpm_range.first > c.wpm_range.second)
      throw Error(ErrorCode::InvalidDocument, "wpm_range must satisfy 0 < lo <= hi");
    if (doc.contains("keyword_policy")) {
      const auto& k = doc.at("keyword_policy");
      std::string mode = k.value("mode", "all_except_blacklist");
      if (mode == "whitelist_only")
        c.keyword_policy.mode = KeywordPolicy::Mode::WhitelistOnly;
      else if (mode != "all_except_blacklist")
        throw Error(ErrorCode::InvalidDocument, "unknown keyword_policy mode '" + mode + "'");
      c.keyword_policy.blacklist = keyword_list(k, "blacklist");
      c.keyword_policy.whitelist = keyword_list(k, "whitelist");
    }
    c.download_images = doc.value("download_images", false);
    c.proxy = optional_string(doc, "proxy");
    c.needs_cf_tickets = doc.value("needs_cf_tickets", false);
    c.load_timeout_s = doc.value("load_timeout_s", 60);
    if (c.load_timeout_s <= 0) throw Error(ErrorCode::InvalidDocument, "load_timeout_s must be positive");
    c.skip_training = doc.value("skip_training", false);
    c.mask_automation = doc.value("mask_automation", true);
    if (doc.contains("driver")) {
      const auto& d = doc.at("driver");
      std::string kind = d.value("kind", "fixture");
      if (kind == "webdriver")
        c.driver.kind = DriverKind::WebDriver;
      else if (kind != "fixture")
        throw Error(ErrorCode::InvalidDocument, "unknown driver kind '" + kind + "'");
      c.driver.fixture_root = d.value("fixture_root", "");
      c.driver.webdriver_url = d.value("webdriver_url", c.driver.webdriver_url);
      c.driver.headless = d.value("headless", true);
    }
    c.store_path = doc.value("store_path", c.store_path);
    c.archive_dir = doc.value("archive_dir", "");
    c.profile_path = doc.value("profile_path", c.profile_path);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("configuration: ") + e.what());
  }
}

void save_configuration(const CrawlConfiguration& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::StoreError, "cannot write " + path.string());
  out << configuration_to_json(config, false).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::StoreError, "write failed for " + path.string());
}

CrawlConfiguration load_configuration(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StoreError, "cannot read " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::InvalidDocument, path.string() + " is not valid JSON");
  auto config = configuration_from_json(doc);
  auto base = path.parent_path();
  resolve_relative(config.driver.fixture_root, base);
  resolve_relative(config.store_path, base);
  resolve_relative(config.archive_dir, base);
  resolve_relative(config.profile_path, base);
  return config;
}

std::string redacted_dump(const CrawlConfiguration& config) { return configuration_to_json(config, true).dump(); }

}  // namespace forumcrawl

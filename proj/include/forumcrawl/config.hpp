#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "forumcrawl/keywords.hpp"
#include "forumcrawl/labels.hpp"
#include "forumcrawl/schedule.hpp"

namespace forumcrawl {

inline constexpr int kConfigSchemaVersion = 1;

struct PageUrls {
  std::string login;
  std::string home;
  std::string section;
  std::optional<std::string> subsection;
  std::string thread;

  /// The URL configured for a page type, if any.
  std::optional<std::string> for_page(PageType type) const;
  bool operator==(const PageUrls&) const = default;
};

struct Credentials {
  std::string username;
  std::string secret;
  bool operator==(const Credentials&) const = default;
};

enum class DriverKind { Fixture, WebDriver };

struct DriverSettings {
  DriverKind kind = DriverKind::Fixture;
  /// Fixture adapter: directory holding manifest.json and the pages.
  std::string fixture_root;
  /// Live adapter: WebDriver endpoint.
  std::string webdriver_url = "http://127.0.0.1:4444";
  bool headless = true;
  bool operator==(const DriverSettings&) const = default;
};

struct CrawlConfiguration {
  std::string forum_id;
  PageUrls urls;
  Credentials credentials;
  /// The timezone lives in schedule.timezone.
  Schedule schedule;
  std::pair<double, double> wpm_range{180.0, 240.0};
  KeywordPolicy keyword_policy;
  bool download_images = false;
  std::optional<std::string> proxy;
  bool needs_cf_tickets = false;
  int load_timeout_s = 60;
  bool skip_training = false;
  bool mask_automation = true;
  DriverSettings driver;
  /// SQLite file for records, visited set, fetch log and tickets.
  std::string store_path = "forumcrawl.db";
  /// Raw page archive root; empty disables archiving.
  std::string archive_dir;
  /// Where `train` writes and `crawl` reads the profile.
  std::string profile_path = "profile.json";

  const std::string& timezone() const { return schedule.timezone; }
  bool operator==(const CrawlConfiguration&) const = default;
};

/// The secret is replaced by "***" when `redact_secrets` is set.
nlohmann::json configuration_to_json(const CrawlConfiguration& config, bool redact_secrets);
/// Throws Error(SchemaMismatch) on a missing or newer schema_version and
/// Error(InvalidDocument) on malformed fields.
CrawlConfiguration configuration_from_json(const nlohmann::json& doc);

void save_configuration(const CrawlConfiguration& config, const std::filesystem::path& path);
/// Relative fixture_root, store_path, archive_dir and profile_path are
/// resolved against the directory holding the file.
CrawlConfiguration load_configuration(const std::filesystem::path& path);

std::string redacted_dump(const CrawlConfiguration& config);

}  // namespace forumcrawl

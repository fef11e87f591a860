#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "forumcrawl/config.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/profile.hpp"

namespace forumcrawl {

/// Shape and behaviors of a generated forum. Counts are per parent.
struct FixtureGenOptions {
  int sections = 3;
  /// 0 puts the threads directly in the sections.
  int subsections = 2;
  int threads = 20;
  int pages = 3;
  int posts = 5;
  int threads_per_listing_page = 10;
  std::uint64_t seed = 1;

  /// Thread links point at the last page; a first-page button leads back.
  bool last_page_landing = false;
  /// Post bodies are revealed only after clicking like and reply.
  bool hidden_content = false;
  /// Every page needs the cf-commitment-2.58 and cf-tokens tickets.
  bool ticket_gate = false;
  /// Post containers carry ids re-rolled on every load.
  bool randomized_ids = false;
  /// Thread-link markup on listings changes after the first visit.
  bool mutate_thread_links = false;
  /// Threads whose title carries a blacklisted keyword.
  int blacklisted_titles = 0;
  /// Threads with a blacklisted keyword in a post on page 2.
  int blacklisted_content = 0;
  std::vector<std::string> blacklist = {"GF", "nudes", "photos", "snapchat", "naked"};
};

nlohmann::json fixture_gen_options_to_json(const FixtureGenOptions& options);
FixtureGenOptions fixture_gen_options_from_json(const nlohmann::json& doc);

struct GeneratedForum {
  std::filesystem::path root;
  FixtureManifest manifest;
  /// Hand-written reference profile (Manual locators).
  TrainedProfile profile;
  CrawlConfiguration config;
  /// Counts and per-thread facts for tests: threads, kept_threads, posts,
  /// thread_urls, censored_title_urls, censored_content_urls.
  nlohmann::json expected;
};

/// Writes the site, manifest.json, profile.json, config.json and
/// expected.json under `root` (replacing its previous content).
GeneratedForum generate_fixture_forum(const std::filesystem::path& root, const FixtureGenOptions& options);

}  // namespace forumcrawl

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "forumcrawl/labels.hpp"
#include "forumcrawl/locator.hpp"

namespace forumcrawl {

inline constexpr int kProfileSchemaVersion = 1;

struct PageProfile {
  std::map<LabelKind, Locator> labels;
  std::optional<std::string> script;

  const Locator* find(LabelKind label) const;
  bool operator==(const PageProfile&) const = default;
};

struct TrainedProfile {
  std::string forum_id;
  SysTime created_at{};
  std::map<PageType, PageProfile> pages;

  const PageProfile* page(PageType type) const;
  const Locator* locator(PageType type, LabelKind label) const;
  bool operator==(const TrainedProfile&) const = default;
};

nlohmann::json profile_to_json(const TrainedProfile& profile);
/// Throws Error(SchemaMismatch) / Error(InvalidDocument); expressions are
/// re-parsed so an unsupported one surfaces as Error(UnsupportedSyntax).
TrainedProfile profile_from_json(const nlohmann::json& doc);

void save_profile(const TrainedProfile& profile, const std::filesystem::path& path);
TrainedProfile load_profile(const std::filesystem::path& path);

/// Locator JSON as used inside profiles and by the HTTP API.
nlohmann::json locator_to_json(const Locator& locator);
Locator locator_from_json(const nlohmann::json& doc);

}  // namespace forumcrawl

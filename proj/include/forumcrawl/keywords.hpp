#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forumcrawl {

struct KeywordPolicy {
  enum class Mode { AllExceptBlacklist, WhitelistOnly };
  Mode mode = Mode::AllExceptBlacklist;
  std::vector<std::string> blacklist;
  std::vector<std::string> whitelist;

  bool operator==(const KeywordPolicy&) const = default;
};

/// Case-insensitive match of `keyword` in `text` where neither neighbour of
/// the match is a word character ([A-Za-z0-9_]). No stemming.
bool contains_keyword(std::string_view text, std::string_view keyword);
/// First keyword of `keywords` found in `text`.
std::optional<std::string> find_keyword(std::string_view text, const std::vector<std::string>& keywords);

/// Title filter applied before a thread is opened.
bool should_open_thread(std::string_view title, const KeywordPolicy& policy);

}  // namespace forumcrawl

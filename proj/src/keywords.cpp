#include "forumcrawl/keywords.hpp"

#include <cctype>

namespace forumcrawl {

namespace {

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

}  // namespace

bool contains_keyword(std::string_view text, std::string_view keyword) {
  if (keyword.empty() || keyword.size() > text.size()) return false;
  for (std::size_t i = 0; i + keyword.size() <= text.size(); ++i) {
    if (i > 0 && is_word(text[i - 1])) continue;
    std::size_t j = 0;
    while (j < keyword.size() && lower(text[i + j]) == lower(keyword[j])) ++j;
    if (j != keyword.size()) continue;
    std::size_t end = i + keyword.size();
    if (end < text.size() && is_word(text[end])) continue;
    return true;
  }
  return false;
}

std::optional<std::string> find_keyword(std::string_view text, const std::vector<std::string>& keywords) {
  for (const auto& k : keywords)
    if (contains_keyword(text, k)) return k;
  return std::nullopt;
}

bool should_open_thread(std::string_view title, const KeywordPolicy& policy) {
  if (find_keyword(title, policy.blacklist)) return false;
  if (policy.mode == KeywordPolicy::Mode::WhitelistOnly) return find_keyword(title, policy.whitelist).has_value();
  return true;
}

}  // namespace forumcrawl

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace forumcrawl {

struct Url {
  std::string scheme;
  /// host[:port]; empty for relative references.
  std::string authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  static Url parse(std::string_view text);
  std::string to_string() const;
  /// scheme://authority
  std::string origin() const;
};

/// RFC 3986 reference resolution.
std::string resolve_url(std::string_view base, std::string_view reference);

/// Visited-set key for a thread: fragment stripped, query parameters sorted,
/// pagination parameters (page, p, start) and trailing `page-N` / `page/N`
/// path segments removed.
std::string canonical_thread_url(std::string_view url);

}  // namespace forumcrawl

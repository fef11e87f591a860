#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "forumcrawl/dom.hpp"

namespace forumcrawl {

struct ParsedDate {
  std::string raw;
  std::optional<SysTime> value;
  bool parse_ok = false;
  bool operator==(const ParsedDate&) const = default;
};

/// One post. (thread_url, page_number, ordinal) is the identity.
struct PostRecord {
  std::string forum_id;
  std::vector<std::string> section_path;
  std::string thread_title;
  std::string thread_url;
  int page_number = 1;
  /// Zero-based position on the page.
  int ordinal = 0;
  std::string author_name;
  std::optional<long long> author_post_count;
  std::optional<std::string> author_popularity;
  std::optional<ParsedDate> author_registration_date;
  std::optional<ParsedDate> post_date;
  std::string content_text;
  std::string content_html;
  SysTime retrieved_at{};

  bool operator==(const PostRecord&) const = default;
};

nlohmann::json record_to_json(const PostRecord& record);
PostRecord record_from_json(const nlohmann::json& doc);

/// One network-bound adapter action.
struct FetchLogEntry {
  std::string url;
  SysTime at{};
  /// open, click, script, image, inject, login.
  std::string action;
  /// ok, or an ErrorCode name, or "interstitial".
  std::string outcome;
  bool operator==(const FetchLogEntry&) const = default;
};

nlohmann::json fetch_log_to_json(const FetchLogEntry& entry);

/// Ordered key/value pairs written to the challenge-bypass extension.
struct TicketBundle {
  std::vector<std::pair<std::string, std::string>> pairs;
  bool operator==(const TicketBundle&) const = default;
};

/// Parses a pasted bundle: a JSON object, a JSON array of [key, value]
/// pairs, or "key=value" lines. Throws Error(InvalidDocument).
TicketBundle parse_ticket_bundle(std::string_view text);

}  // namespace forumcrawl

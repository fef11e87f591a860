#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "forumcrawl/dom.hpp"

namespace forumcrawl {

/// RFC 3339 UTC, e.g. "2024-01-15T16:00:00Z"; sub-second digits only when
/// non-zero, so the round trip is exact.
std::string format_timestamp(SysTime t);
std::optional<SysTime> parse_timestamp(std::string_view text);
/// Compact form for file names, e.g. "20240115T160000Z".
std::string compact_timestamp(SysTime t);

/// Parses `text` with a strftime-style pattern in UTC. The whole input
/// (modulo surrounding whitespace) must be consumed.
std::optional<SysTime> parse_date(std::string_view text, std::string_view pattern);

}  // namespace forumcrawl

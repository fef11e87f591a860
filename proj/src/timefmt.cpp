#include "forumcrawl/timefmt.hpp"

#include <absl/time/time.h>

namespace forumcrawl {

namespace {

absl::Time to_absl(SysTime t) {
  return absl::FromUnixNanos(std::chrono::duration_cast<std::chrono::nanoseconds>(t.time_since_epoch()).count());
}

SysTime from_absl(absl::Time t) {
  return SysTime(std::chrono::duration_cast<SysTime::duration>(std::chrono::nanoseconds(absl::ToUnixNanos(t))));
}

}  // namespace

std::string format_timestamp(SysTime t) { return absl::FormatTime("%Y-%m-%dT%H:%M:%E*SZ", to_absl(t), absl::UTCTimeZone()); }

std::string compact_timestamp(SysTime t) { return absl::FormatTime("%Y%m%dT%H%M%SZ", to_absl(t), absl::UTCTimeZone()); }

std::optional<SysTime> parse_timestamp(std::string_view text) {
  absl::Time t;
  std::string err;
  if (!absl::ParseTime("%Y-%m-%dT%H:%M:%E*SZ", std::string(text), absl::UTCTimeZone(), &t, &err)) return std::nullopt;
  return from_absl(t);
}

std::optional<SysTime> parse_date(std::string_view text, std::string_view pattern) {
  absl::Time t;
  std::string err;
  // absl::ParseTime requires the full input to be consumed (trailing
  // whitespace excepted) and fills missing fields from the epoch.
  if (!absl::ParseTime(std::string(pattern), std::string(text), absl::UTCTimeZone(), &t, &err)) return std::nullopt;
  return from_absl(t);
}

}  // namespace forumcrawl

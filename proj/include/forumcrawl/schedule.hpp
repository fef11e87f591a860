#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "forumcrawl/dom.hpp"

namespace forumcrawl {

using Rng = std::mt19937_64;
using Seconds = std::chrono::duration<double>;

struct LocalTime {
  int hour = 0;
  int minute = 0;

  /// "HH:MM"; throws Error(InvalidDocument) on malformed input.
  static LocalTime parse(std::string_view text);
  std::string to_string() const;
  int minutes() const { return hour * 60 + minute; }
  auto operator<=>(const LocalTime&) const = default;
};

struct BreakWindow {
  LocalTime start;
  LocalTime end;
  bool operator==(const BreakWindow&) const = default;
};

struct WorkWindow {
  LocalTime start;
  LocalTime end;
  std::vector<BreakWindow> breaks;
  bool operator==(const WorkWindow&) const = default;
};

/// Index 0 is Monday.
inline constexpr std::array<const char*, 7> kWeekdayNames = {"monday", "tuesday",  "wednesday", "thursday",
                                                             "friday", "saturday", "sunday"};

struct Schedule {
  std::string timezone = "UTC";
  std::array<std::vector<WorkWindow>, 7> days;
  int session_variance_min = 0;
  int break_variance_min = 0;
  /// Interrupt duration bounds in minutes; absent disables interrupts.
  std::optional<std::pair<int, int>> interrupt_duration_min;
  int interrupt_min_gap_min = 0;

  /// No windows on any day: the crawler runs without pauses.
  bool always_on() const;
  /// Throws Error(InvalidDocument) when an invariant is violated.
  void validate() const;
  bool operator==(const Schedule&) const = default;
};

struct CivilDate {
  int year = 1970;
  int month = 1;
  int day = 1;
  auto operator<=>(const CivilDate&) const = default;
};

enum class SpanKind { Run, Break, Interrupt };

struct ActivitySpan {
  SpanKind kind = SpanKind::Run;
  SysTime start;
  SysTime end;
  bool operator==(const ActivitySpan&) const = default;
};

/// Seconds of margin kept between an interrupt and the edges of its Run span.
inline constexpr std::chrono::seconds kInterruptEdgeMargin{60};

/// Spans for one local calendar day, time-ordered. Empty when the weekday
/// has no windows. Deterministic for a given seed.
std::vector<ActivitySpan> compile_schedule(const Schedule& schedule, CivilDate day, std::uint64_t seed);

struct RunUntil {
  SysTime until;
};
struct PauseUntil {
  SysTime until;
};
struct DayOver {};
using NextAction = std::variant<RunUntil, PauseUntil, DayOver>;

/// Pure lookup; an instant on a boundary belongs to the later span.
NextAction next_action(std::span<const ActivitySpan> spans, SysTime now);

/// Local calendar date of `now` in the schedule's timezone.
CivilDate local_date(const std::string& timezone, SysTime now);
/// First instant of the local day after `day`.
SysTime start_of_next_day(const std::string& timezone, CivilDate day);
/// Monday = 0.
int weekday_index(CivilDate day);

/// word_count / wpm * 60 with wpm uniform in [lo, hi].
/// Throws Error(ZeroRange) if lo <= 0 or lo > hi.
Seconds reading_delay(std::size_t word_count, std::pair<double, double> wpm_range, Rng& rng);
/// Uniform in [5, 15] seconds.
Seconds navigation_delay(Rng& rng);

inline constexpr double kNavigationDelayMin = 5.0;
inline constexpr double kNavigationDelayMax = 15.0;

}  // namespace forumcrawl

#include "forumcrawl/schedule.hpp"

#include <absl/time/civil_time.h>
#include <absl/time/time.h>

#include <algorithm>
#include <cstdio>

#include "forumcrawl/error.hpp"

namespace forumcrawl {

namespace {

constexpr int kMaxJitterAttempts = 100;

absl::TimeZone load_zone(const std::string& name) {
  absl::TimeZone tz;
  if (!absl::LoadTimeZone(name, &tz)) throw Error(ErrorCode::InvalidDocument, "unknown timezone '" + name + "'");
  return tz;
}

SysTime to_sys(absl::Time t) {
  return SysTime(std::chrono::duration_cast<SysTime::duration>(
      std::chrono::microseconds(absl::ToUnixMicros(t))));
}

SysTime local_instant(const absl::TimeZone& tz, CivilDate day, LocalTime t) {
  absl::CivilMinute cm(day.year, day.month, day.day, t.hour, t.minute);
  return to_sys(absl::FromCivil(cm, tz));
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

struct Pause {
  SysTime start;
  SysTime end;
};

}  // namespace

LocalTime LocalTime::parse(std::string_view text) {
  int h = -1, m = -1;
  char extra = 0;
  std::string s(text);
  if (s.size() != 5 || std::sscanf(s.c_str(), "%2d:%2d%c", &h, &m, &extra) != 2 || h < 0 || m < 0 || m > 59 ||
      h > 24 || (h == 24 && m != 0))
    throw Error(ErrorCode::InvalidDocument, "invalid local time '" + s + "', expected HH:MM");
  return {h, m};
}

std::string LocalTime::to_string() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", hour, minute);
  return buf;
}

bool Schedule::always_on() const {
  return std::all_of(days.begin(), days.end(), [](const auto& d) { return d.empty(); });
}

void Schedule::validate() const {
  load_zone(timezone);
  if (session_variance_min < 0 || break_variance_min < 0 || interrupt_min_gap_min < 0)
    throw Error(ErrorCode::InvalidDocument, "variances and gaps must be non-negative");
  if (interrupt_duration_min &&
      (interrupt_duration_min->first < 0 || interrupt_duration_min->first > interrupt_duration_min->second))
    throw Error(ErrorCode::InvalidDocument, "interrupt duration range must satisfy 0 <= min <= max");
  for (std::size_t d = 0; d < days.size(); ++d) {
    LocalTime previous_end{-1, 0};
    for (const auto& w : days[d]) {
      std::string where = std::string(kWeekdayNames[d]) + " " + w.start.to_string() + "-" + w.end.to_string();
      if (!(w.start < w.end)) throw Error(ErrorCode::InvalidDocument, where + ": start must precede end");
      if (!(previous_end < w.start)) throw Error(ErrorCode::InvalidDocument, where + ": windows overlap");
      LocalTime cursor = w.start;
      for (const auto& b : w.breaks) {
        if (!(cursor < b.start) || !(b.start < b.end) || !(b.end < w.end))
          throw Error(ErrorCode::InvalidDocument, where + ": break " + b.start.to_string() + "-" +
                                                      b.end.to_string() + " not nested and ordered");
        cursor = b.end;
      }
      previous_end = w.end;
    }
  }
}

int weekday_index(CivilDate day) {
  auto wd = absl::GetWeekday(absl::CivilDay(day.year, day.month, day.day));
  switch (wd) {
    case absl::Weekday::monday: return 0;
    case absl::Weekday::tuesday: return 1;
    case absl::Weekday::wednesday: return 2;
    case absl::Weekday::thursday: return 3;
    case absl::Weekday::friday: return 4;
    case absl::Weekday::saturday: return 5;
    case absl::Weekday::sunday: return 6;
  }
  return 0;
}

CivilDate local_date(const std::string& timezone, SysTime now) {
  auto tz = load_zone(timezone);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count();
  auto cd = absl::ToCivilDay(absl::FromUnixMicros(micros), tz);
  return {static_cast<int>(cd.year()), cd.month(), cd.day()};
}

SysTime start_of_next_day(const std::string& timezone, CivilDate day) {
  auto tz = load_zone(timezone);
  absl::CivilDay next = absl::CivilDay(day.year, day.month, day.day) + 1;
  return to_sys(absl::FromCivil(absl::CivilSecond(next), tz));
}

std::vector<ActivitySpan> compile_schedule(const Schedule& schedule, CivilDate day, std::uint64_t seed) {
  const auto& windows = schedule.days[static_cast<std::size_t>(weekday_index(day))];
  std::vector<ActivitySpan> spans;
  if (windows.empty()) return spans;
  auto tz = load_zone(schedule.timezone);
  Rng rng(seed);

  // Nominal boundaries in order: w.start, b1.start, b1.end, ..., w.end per window.
  std::vector<SysTime> nominal;
  std::vector<std::int64_t> variance;
  const std::int64_t sv = std::int64_t{schedule.session_variance_min} * 60;
  const std::int64_t bv = std::int64_t{schedule.break_variance_min} * 60;
  for (const auto& w : windows) {
    nominal.push_back(local_instant(tz, day, w.start));
    variance.push_back(sv);
    for (const auto& b : w.breaks) {
      nominal.push_back(local_instant(tz, day, b.start));
      variance.push_back(bv);
      nominal.push_back(local_instant(tz, day, b.end));
      variance.push_back(bv);
    }
    nominal.push_back(local_instant(tz, day, w.end));
    variance.push_back(sv);
  }

  // Jitter every boundary uniformly (whole seconds); resample until the
  // order is preserved, falling back to nominal times.
  std::vector<SysTime> bounds = nominal;
  for (int attempt = 0; attempt < kMaxJitterAttempts; ++attempt) {
    std::vector<SysTime> trial(nominal.size());
    for (std::size_t i = 0; i < nominal.size(); ++i)
      trial[i] = nominal[i] + std::chrono::seconds(uniform_int(rng, -variance[i], variance[i]));
    if (std::adjacent_find(trial.begin(), trial.end(), std::greater_equal<>()) == trial.end()) {
      bounds = std::move(trial);
      break;
    }
  }

  // Run and Break spans.
  std::size_t k = 0;
  for (const auto& w : windows) {
    SysTime cursor = bounds[k++];
    for (std::size_t b = 0; b < w.breaks.size(); ++b) {
      SysTime bs = bounds[k++], be = bounds[k++];
      spans.push_back({SpanKind::Run, cursor, bs});
      spans.push_back({SpanKind::Break, bs, be});
      cursor = be;
    }
    spans.push_back({SpanKind::Run, cursor, bounds[k++]});
  }

  if (!schedule.interrupt_duration_min || schedule.interrupt_duration_min->second <= 0) return spans;

  const std::chrono::seconds gap(std::int64_t{schedule.interrupt_min_gap_min} * 60);
  const std::int64_t dmin = std::int64_t{schedule.interrupt_duration_min->first} * 60;
  const std::int64_t dmax = std::int64_t{schedule.interrupt_duration_min->second} * 60;

  // Greedy maximal packing. Pauses are breaks and interrupts; consecutive
  // pauses keep at least `gap` between them across the whole day.
  struct Placed {
    std::size_t run;
    SysTime start;
    std::chrono::seconds duration;
  };
  std::vector<Placed> placed;
  std::optional<SysTime> last_pause_end;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].kind != SpanKind::Run) {
      last_pause_end = spans[i].end;
      continue;
    }
    const SysTime run_end = spans[i].end;
    const bool break_follows = i + 1 < spans.size() && spans[i + 1].kind == SpanKind::Break;
    while (true) {
      SysTime t = spans[i].start + kInterruptEdgeMargin;
      if (last_pause_end) t = std::max(t, *last_pause_end + gap);
      std::chrono::seconds d(uniform_int(rng, dmin, dmax));
      if (d.count() == 0) d = std::chrono::seconds(1);
      SysTime limit = run_end - kInterruptEdgeMargin;
      if (break_follows) limit = std::min(limit, run_end - gap);
      if (t + d > limit) break;
      placed.push_back({i, t, d});
      last_pause_end = t + d;
    }
  }

  // Thin by coin flips, then shift each survivor uniformly within its slack.
  std::vector<Placed> kept;
  std::bernoulli_distribution coin(0.5);
  for (const auto& p : placed)
    if (coin(rng)) kept.push_back(p);

  auto previous_pause_end = [&](std::size_t kept_index) -> std::optional<SysTime> {
    std::optional<SysTime> best;
    for (std::size_t i = 0; i < spans.size(); ++i)
      if (spans[i].kind == SpanKind::Break && spans[i].end <= kept[kept_index].start) best = spans[i].end;
    if (kept_index > 0) {
      SysTime prev = kept[kept_index - 1].start + kept[kept_index - 1].duration;
      if (!best || prev > *best) best = prev;
    }
    return best;
  };
  auto next_pause_start = [&](std::size_t kept_index) -> std::optional<SysTime> {
    std::optional<SysTime> best;
    SysTime end = kept[kept_index].start + kept[kept_index].duration;
    for (const auto& s : spans)
      if (s.kind == SpanKind::Break && s.start >= end) {
        best = s.start;
        break;
      }
    if (kept_index + 1 < kept.size() && (!best || kept[kept_index + 1].start < *best))
      best = kept[kept_index + 1].start;
    return best;
  };

  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& run = spans[kept[i].run];
    SysTime lo = run.start + kInterruptEdgeMargin;
    if (auto prev = previous_pause_end(i)) lo = std::max(lo, *prev + gap);
    SysTime hi = run.end - kInterruptEdgeMargin - kept[i].duration;
    if (auto next = next_pause_start(i)) hi = std::min(hi, *next - gap - kept[i].duration);
    auto span_s = std::chrono::duration_cast<std::chrono::seconds>(hi - lo).count();
    if (span_s > 0) kept[i].start = lo + std::chrono::seconds(uniform_int(rng, 0, span_s));
  }

  // Split Run spans around the interrupts.
  std::vector<ActivitySpan> out;
  std::size_t next_kept = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].kind != SpanKind::Run) {
      out.push_back(spans[i]);
      continue;
    }
    SysTime cursor = spans[i].start;
    while (next_kept < kept.size() && kept[next_kept].run == i) {
      const auto& p = kept[next_kept++];
      out.push_back({SpanKind::Run, cursor, p.start});
      out.push_back({SpanKind::Interrupt, p.start, p.start + p.duration});
      cursor = p.start + p.duration;
    }
    out.push_back({SpanKind::Run, cursor, spans[i].end});
  }
  return out;
}

NextAction next_action(std::span<const ActivitySpan> spans, SysTime now) {
  for (const auto& s : spans) {
    if (now < s.start) return PauseUntil{s.start};
    if (now < s.end) {
      if (s.kind == SpanKind::Run) return RunUntil{s.end};
      return PauseUntil{s.end};
    }
  }
  return DayOver{};
}

Seconds reading_delay(std::size_t word_count, std::pair<double, double> wpm_range, Rng& rng) {
  auto [lo, hi] = wpm_range;
  if (!(lo > 0) || lo > hi)
    throw Error(ErrorCode::ZeroRange, "words-per-minute range must satisfy 0 < lo <= hi, got (" +
                                          std::to_string(lo) + ", " + std::to_string(hi) + ")");
  double wpm = lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng);
  return Seconds(static_cast<double>(word_count) / wpm * 60.0);
}

Seconds navigation_delay(Rng& rng) {
  return Seconds(std::uniform_real_distribution<double>(kNavigationDelayMin, kNavigationDelayMax)(rng));
}

}  // namespace forumcrawl

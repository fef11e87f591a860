#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "forumcrawl/error.hpp"
#include "forumcrawl/schedule.hpp"

using namespace forumcrawl;
using std::chrono::seconds;

namespace {

SysTime unix_s(long long s) { return SysTime(seconds(s)); }

long long to_unix(SysTime t) { return std::chrono::duration_cast<seconds>(t.time_since_epoch()).count(); }

// Weekdays 17:00-20:00; weekends 09:30-13:30 with a 10:30-11:00 break.
Schedule evening_weekend_schedule(int variance_min) {
  Schedule s;
  s.timezone = "Europe/Amsterdam";
  for (int d = 0; d < 5; ++d) s.days[d] = {WorkWindow{{17, 0}, {20, 0}, {}}};
  for (int d = 5; d < 7; ++d) s.days[d] = {WorkWindow{{9, 30}, {13, 30}, {BreakWindow{{10, 30}, {11, 0}}}}};
  s.session_variance_min = variance_min;
  s.break_variance_min = variance_min;
  return s;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::StoreError;
}

// Reference instants computed with Python's zoneinfo (Europe/Amsterdam).
constexpr long long kMon0115_1700 = 1705334400;
constexpr long long kMon0115_2000 = 1705345200;
constexpr long long kSat0113_0930 = 1705134600;
constexpr long long kSat0113_1030 = 1705138200;
constexpr long long kSat0113_1100 = 1705140000;
constexpr long long kSat0113_1330 = 1705149000;
constexpr long long kFri0329_1700 = 1711728000;  // CET
constexpr long long kTue0402_1700 = 1712070000;  // CEST

}  // namespace

TEST(LocalTimeParse, Formats) {
  EXPECT_EQ(LocalTime::parse("09:30"), (LocalTime{9, 30}));
  EXPECT_EQ(LocalTime::parse("24:00"), (LocalTime{24, 0}));
  EXPECT_EQ((LocalTime{7, 5}).to_string(), "07:05");
  for (const char* bad : {"9:30", "25:00", "12:60", "ab:cd", "12:301", "24:01"}) {
    SCOPED_TRACE(bad);
    EXPECT_EQ(code_of([&] { LocalTime::parse(bad); }), ErrorCode::InvalidDocument);
  }
}

TEST(CompileSchedule, WeekdayWindowZeroVariance) {
  auto s = evening_weekend_schedule(0);
  auto spans = compile_schedule(s, {2024, 1, 15}, 1);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].kind, SpanKind::Run);
  EXPECT_EQ(to_unix(spans[0].start), kMon0115_1700);
  EXPECT_EQ(to_unix(spans[0].end), kMon0115_2000);
}

TEST(CompileSchedule, WeekendBreakGivesRunBreakRun) {
  auto s = evening_weekend_schedule(0);
  auto spans = compile_schedule(s, {2024, 1, 13}, 1);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0].kind, SpanKind::Run);
  EXPECT_EQ(spans[1].kind, SpanKind::Break);
  EXPECT_EQ(spans[2].kind, SpanKind::Run);
  EXPECT_EQ(to_unix(spans[0].start), kSat0113_0930);
  EXPECT_EQ(to_unix(spans[1].start), kSat0113_1030);
  EXPECT_EQ(to_unix(spans[1].end), kSat0113_1100);
  EXPECT_EQ(to_unix(spans[2].end), kSat0113_1330);
}

TEST(CompileSchedule, EmptyDayIsEmptyList) {
  Schedule s;
  s.days[0] = {WorkWindow{{9, 0}, {10, 0}, {}}};
  EXPECT_TRUE(compile_schedule(s, {2024, 1, 16}, 1).empty());
  EXPECT_FALSE(s.always_on());
  EXPECT_TRUE(Schedule{}.always_on());
}

TEST(CompileSchedule, DstChangesUtcInstant) {
  auto s = evening_weekend_schedule(0);
  EXPECT_EQ(to_unix(compile_schedule(s, {2024, 3, 29}, 1)[0].start), kFri0329_1700);
  EXPECT_EQ(to_unix(compile_schedule(s, {2024, 4, 2}, 1)[0].start), kTue0402_1700);
  EXPECT_NE((kFri0329_1700 % 86400), (kTue0402_1700 % 86400));
}

TEST(CompileSchedule, Deterministic) {
  auto s = evening_weekend_schedule(10);
  s.interrupt_duration_min = {{5, 15}};
  s.interrupt_min_gap_min = 30;
  EXPECT_EQ(compile_schedule(s, {2024, 1, 13}, 42), compile_schedule(s, {2024, 1, 13}, 42));
  bool any_differs = false;
  for (std::uint64_t seed = 0; seed < 20 && !any_differs; ++seed)
    any_differs = compile_schedule(s, {2024, 1, 13}, seed) != compile_schedule(s, {2024, 1, 13}, seed + 100);
  EXPECT_TRUE(any_differs);
}

// Property: jitter never exceeds the variance, spans are ordered and
// non-overlapping, and pauses keep the minimum gap.
TEST(CompileScheduleProperty, JitterBoundsAndGaps) {
  auto s = evening_weekend_schedule(10);
  s.interrupt_duration_min = {{5, 20}};
  s.interrupt_min_gap_min = 25;
  const seconds var(600);
  std::size_t interrupts_seen = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto weekday = compile_schedule(s, {2024, 1, 15}, seed);
    ASSERT_FALSE(weekday.empty());
    EXPECT_LE(std::chrono::abs(weekday.front().start - unix_s(kMon0115_1700)), var);
    EXPECT_LE(std::chrono::abs(weekday.back().end - unix_s(kMon0115_2000)), var);

    auto weekend = compile_schedule(s, {2024, 1, 13}, seed);
    const ActivitySpan* brk = nullptr;
    for (const auto& sp : weekend)
      if (sp.kind == SpanKind::Break) brk = &sp;
    ASSERT_NE(brk, nullptr);
    EXPECT_LE(std::chrono::abs(brk->start - unix_s(kSat0113_1030)), var);
    EXPECT_LE(std::chrono::abs(brk->end - unix_s(kSat0113_1100)), var);
    EXPECT_LE(std::chrono::abs(weekend.front().start - unix_s(kSat0113_0930)), var);
    EXPECT_LE(std::chrono::abs(weekend.back().end - unix_s(kSat0113_1330)), var);

    for (const auto* spans : {&weekday, &weekend}) {
      const ActivitySpan* prev_pause = nullptr;
      for (std::size_t i = 0; i < spans->size(); ++i) {
        const auto& sp = (*spans)[i];
        EXPECT_LT(sp.start, sp.end);
        if (i > 0) EXPECT_EQ((*spans)[i - 1].end, sp.start);
        if (i > 0) EXPECT_NE((*spans)[i - 1].kind == SpanKind::Run, sp.kind == SpanKind::Run);
        if (sp.kind == SpanKind::Run) continue;
        if (sp.kind == SpanKind::Interrupt) {
          ++interrupts_seen;
          auto d = sp.end - sp.start;
          EXPECT_GE(d, seconds(5 * 60));
          EXPECT_LE(d, seconds(20 * 60));
          EXPECT_GE(sp.start - (*spans)[i - 1].start, kInterruptEdgeMargin);
          EXPECT_GE((*spans)[i + 1].end - sp.end, kInterruptEdgeMargin);
        }
        if (prev_pause && (sp.kind == SpanKind::Interrupt || prev_pause->kind == SpanKind::Interrupt))
          EXPECT_GE(sp.start - prev_pause->end, seconds(25 * 60));
        prev_pause = &sp;
      }
    }
  }
  EXPECT_GT(interrupts_seen, 0u);
}

TEST(CompileSchedule, ValidateRejectsBadSchedules) {
  Schedule s;
  s.days[0] = {WorkWindow{{10, 0}, {9, 0}, {}}};
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidDocument);
  s.days[0] = {WorkWindow{{9, 0}, {12, 0}, {BreakWindow{{11, 0}, {13, 0}}}}};
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidDocument);
  s.days[0] = {WorkWindow{{9, 0}, {12, 0}, {}}, WorkWindow{{11, 0}, {14, 0}, {}}};
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidDocument);
  s.days[0] = {WorkWindow{{9, 0}, {12, 0}, {}}};
  s.session_variance_min = -1;
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidDocument);
  s.session_variance_min = 0;
  s.timezone = "Mars/Olympus";
  EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidDocument);
  s.timezone = "Europe/Amsterdam";
  EXPECT_NO_THROW(s.validate());
}

TEST(NextAction, Lookup) {
  std::vector<ActivitySpan> spans = {{SpanKind::Run, unix_s(100), unix_s(200)},
                                     {SpanKind::Break, unix_s(200), unix_s(300)},
                                     {SpanKind::Run, unix_s(300), unix_s(400)},
                                     {SpanKind::Run, unix_s(500), unix_s(600)}};
  auto is_run = [](const NextAction& a, long long t) {
    return std::holds_alternative<RunUntil>(a) && to_unix(std::get<RunUntil>(a).until) == t;
  };
  auto is_pause = [](const NextAction& a, long long t) {
    return std::holds_alternative<PauseUntil>(a) && to_unix(std::get<PauseUntil>(a).until) == t;
  };
  EXPECT_TRUE(is_pause(next_action(spans, unix_s(50)), 100));
  EXPECT_TRUE(is_run(next_action(spans, unix_s(150)), 200));
  EXPECT_TRUE(is_pause(next_action(spans, unix_s(200)), 300));  // boundary goes to the later span
  EXPECT_TRUE(is_pause(next_action(spans, unix_s(250)), 300));
  EXPECT_TRUE(is_run(next_action(spans, unix_s(300)), 400));
  EXPECT_TRUE(is_pause(next_action(spans, unix_s(450)), 500));
  EXPECT_TRUE(std::holds_alternative<DayOver>(next_action(spans, unix_s(600))));
  EXPECT_TRUE(std::holds_alternative<DayOver>(next_action({}, unix_s(0))));
}

TEST(LocalDates, DayArithmetic) {
  EXPECT_EQ(weekday_index({2024, 1, 15}), 0);
  EXPECT_EQ(weekday_index({2024, 1, 13}), 5);
  EXPECT_EQ(local_date("Europe/Amsterdam", unix_s(kMon0115_2000)), (CivilDate{2024, 1, 15}));
  // 23:30 UTC on the 15th is already the 16th in Amsterdam.
  EXPECT_EQ(local_date("Europe/Amsterdam", unix_s(1705361400)), (CivilDate{2024, 1, 16}));
  EXPECT_EQ(to_unix(start_of_next_day("UTC", {2024, 1, 15})), 1705363200);
}

TEST(ReadingDelay, BoundsForSixHundredWords) {
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    double d = reading_delay(600, {180, 240}, rng).count();
    ASSERT_GE(d, 150.0);
    ASSERT_LE(d, 200.0);
  }
  EXPECT_EQ(reading_delay(0, {180, 240}, rng).count(), 0.0);
  EXPECT_DOUBLE_EQ(reading_delay(300, {200, 200}, rng).count(), 90.0);
}

TEST(ReadingDelay, ZeroRange) {
  Rng rng(1);
  EXPECT_EQ(code_of([&] { reading_delay(10, {0, 100}, rng); }), ErrorCode::ZeroRange);
  EXPECT_EQ(code_of([&] { reading_delay(10, {-5, 100}, rng); }), ErrorCode::ZeroRange);
  EXPECT_EQ(code_of([&] { reading_delay(10, {200, 100}, rng); }), ErrorCode::ZeroRange);
}

TEST(ReadingDelay, FasterRangeTakesLess) {
  Rng a(3), b(3);
  double slow = 0, fast = 0;
  for (int post = 0; post < 1451; ++post) {
    std::size_t words = 50 + static_cast<std::size_t>(post % 97) * 7;
    slow += reading_delay(words, {180, 240}, a).count();
    fast += reading_delay(words, {600, 800}, b).count();
  }
  EXPECT_LT(fast, slow);
}

TEST(NavigationDelay, BoundsMeanAndReproducibility) {
  Rng rng(17);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    double d = navigation_delay(rng).count();
    ASSERT_GE(d, 5.0);
    ASSERT_LE(d, 15.0);
    sum += d;
  }
  EXPECT_NEAR(sum / 10000, 10.0, 0.2);
  Rng x(5), y(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(navigation_delay(x), navigation_delay(y));
}

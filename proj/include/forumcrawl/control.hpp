#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>

#include "forumcrawl/dom.hpp"

namespace forumcrawl {

enum class Command { Pause, Resume, Terminate };
enum class RunStatus { Running, Paused, Terminated };

std::string_view to_string(Command command);
std::string_view to_string(RunStatus status);
std::optional<Command> command_from_string(std::string_view text);

struct Transition {
  RunStatus next;
  /// A pending delay, break or interrupt is cut short.
  bool cancel_wait = false;
};

/// Pure state machine. Resume while Running still cancels the current wait.
/// Throws Error(InvalidTransition) for any command once Terminated.
Transition handle_command(RunStatus state, Command command);

/// Thread-safe queue of operator commands.
class CommandChannel {
 public:
  void post(Command command);
  std::optional<Command> try_pop();
  /// Blocks until a command arrives.
  Command wait_pop();
  /// Blocks until a command arrives or `deadline` (system clock) passes.
  std::optional<Command> wait_pop_until(SysTime deadline);
  /// Waits without consuming; true if a command is pending.
  bool wait_nonempty_until(SysTime deadline);
  bool empty() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Command> queue_;
};

class Clock {
 public:
  virtual ~Clock() = default;
  virtual SysTime now() const = 0;
  /// Sleeps until `deadline` or until `wake` holds a command.
  virtual void sleep_until(SysTime deadline, CommandChannel& wake) = 0;
};

class SystemClock final : public Clock {
 public:
  SysTime now() const override;
  void sleep_until(SysTime deadline, CommandChannel& wake) override;
};

/// Time advances only through sleep_until, which jumps straight to the
/// deadline unless a command is pending.
class SimulatedClock final : public Clock {
 public:
  explicit SimulatedClock(SysTime start) : now_(start) {}
  SysTime now() const override;
  void sleep_until(SysTime deadline, CommandChannel& wake) override;
  void advance(std::chrono::nanoseconds d);
  /// Called with the current time and the deadline before each jump; tests
  /// use it to post commands at a given simulated instant.
  std::function<void(SysTime now, SysTime deadline)> on_sleep;

 private:
  mutable std::mutex mu_;
  SysTime now_;
};

}  // namespace forumcrawl

#include "forumcrawl/control.hpp"

#include "forumcrawl/error.hpp"

namespace forumcrawl {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Pause: return "pause";
    case Command::Resume: return "resume";
    case Command::Terminate: return "terminate";
  }
  return "pause";
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Running: return "running";
    case RunStatus::Paused: return "paused";
    case RunStatus::Terminated: return "terminated";
  }
  return "running";
}

std::optional<Command> command_from_string(std::string_view text) {
  for (auto c : {Command::Pause, Command::Resume, Command::Terminate})
    if (to_string(c) == text) return c;
  return std::nullopt;
}

Transition handle_command(RunStatus state, Command command) {
  if (state == RunStatus::Terminated)
    throw Error(ErrorCode::InvalidTransition,
                std::string(to_string(command)) + " received after the crawl was terminated");
  switch (command) {
    case Command::Pause: return {RunStatus::Paused, false};
    case Command::Resume: return {RunStatus::Running, true};
    case Command::Terminate: return {RunStatus::Terminated, true};
  }
  return {state, false};
}

void CommandChannel::post(Command command) {
  {
    std::lock_guard lock(mu_);
    queue_.push_back(command);
  }
  cv_.notify_all();
}

std::optional<Command> CommandChannel::try_pop() {
  std::lock_guard lock(mu_);
  if (queue_.empty()) return std::nullopt;
  auto c = queue_.front();
  queue_.pop_front();
  return c;
}

Command CommandChannel::wait_pop() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return !queue_.empty(); });
  auto c = queue_.front();
  queue_.pop_front();
  return c;
}

std::optional<Command> CommandChannel::wait_pop_until(SysTime deadline) {
  std::unique_lock lock(mu_);
  if (!cv_.wait_until(lock, deadline, [&] { return !queue_.empty(); })) return std::nullopt;
  auto c = queue_.front();
  queue_.pop_front();
  return c;
}

bool CommandChannel::wait_nonempty_until(SysTime deadline) {
  std::unique_lock lock(mu_);
  return cv_.wait_until(lock, deadline, [&] { return !queue_.empty(); });
}

bool CommandChannel::empty() const {
  std::lock_guard lock(mu_);
  return queue_.empty();
}

SysTime SystemClock::now() const { return std::chrono::system_clock::now(); }

void SystemClock::sleep_until(SysTime deadline, CommandChannel& wake) { wake.wait_nonempty_until(deadline); }

SysTime SimulatedClock::now() const {
  std::lock_guard lock(mu_);
  return now_;
}

void SimulatedClock::sleep_until(SysTime deadline, CommandChannel& wake) {
  if (on_sleep) on_sleep(now(), deadline);
  if (!wake.empty()) return;
  std::lock_guard lock(mu_);
  if (deadline > now_) now_ = deadline;
}

void SimulatedClock::advance(std::chrono::nanoseconds d) {
  std::lock_guard lock(mu_);
  now_ += std::chrono::duration_cast<SysTime::duration>(d);
}

}  // namespace forumcrawl

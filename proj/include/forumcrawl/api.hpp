#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "forumcrawl/fetch.hpp"
#include "forumcrawl/store.hpp"
#include "forumcrawl/training.hpp"

namespace forumcrawl {

struct PendingPrompt {
  std::uint64_t id = 0;
  PromptKind kind = PromptKind::CaptchaSolved;
  std::string question;
};

/// Hands blocking operator questions to whoever polls for them.
class PromptBroker {
 public:
  /// The asking thread blocks until answer() or cancel().
  OperatorPrompt prompter();
  std::optional<PendingPrompt> pending() const;
  /// False when no prompt is pending or `id` names an older one.
  bool answer(std::optional<std::uint64_t> id, std::string text);
  /// Wakes the asking thread with Error(Timeout); later questions fail at once.
  void cancel();

 private:
  std::string ask(PromptKind kind, const std::string& question);

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::optional<PendingPrompt> pending_;
  std::optional<std::string> answer_;
  std::uint64_t next_id_ = 1;
  bool cancelled_ = false;
};

nlohmann::json inference_to_json(const InferenceResult& result, const DomSnapshot* snapshot);
nlohmann::json page_record_to_json(const PageRecord& page, bool with_html);

/// HTTP status for an error raised by the session: 409 for state conflicts,
/// 422 for rejected input, 502 for fetch failures, 500 otherwise.
int http_status_for(ErrorCode code);

/// Loopback JSON API over one training session. Session calls run on a
/// single control thread; confirm is queued there and answered with 202.
class TrainingApi {
 public:
  /// `adapter` receives pasted tickets; `store` keeps them. Both optional.
  TrainingApi(TrainingSession& session, PromptBroker& prompts, FetchAdapter* adapter = nullptr,
              Store* store = nullptr);
  ~TrainingApi();
  TrainingApi(const TrainingApi&) = delete;
  TrainingApi& operator=(const TrainingApi&) = delete;

  /// Binds 127.0.0.1 (port 0 picks a free one) and serves in the background.
  int start(int port = 0);
  void stop();
  int port() const { return port_; }

  /// Blocks until a profile was finalized through the API or stop() ran.
  std::optional<TrainedProfile> wait_finalized();

 private:
  struct Reply {
    int status = 200;
    nlohmann::json body;
  };
  using Task = std::function<Reply()>;

  void install_routes();
  /// Runs `task` on the control thread and waits; 409 if it is busy.
  Reply run(Task task);
  using Done = std::function<void(Reply*, std::exception_ptr)>;
  /// Queues `task` without waiting; 409 if the control thread is busy.
  /// `precheck` runs first under the lock and may throw to refuse.
  Reply launch(Task task, const std::function<void()>& precheck = {}, Done done = {});
  void control_loop();
  void publish_state();
  nlohmann::json state_json() const;
  PageType target_page(const nlohmann::json& body) const;

  TrainingSession& session_;
  PromptBroker& prompts_;
  FetchAdapter* adapter_;
  Store* store_;
  struct Server;
  std::unique_ptr<Server> server_;
  std::thread listener_;
  std::thread control_;
  int port_ = 0;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> queue_;
  bool busy_ = false;
  bool stopping_ = false;
  std::string activity_;
  nlohmann::json published_;
  nlohmann::json last_gate_;
  nlohmann::json last_error_;
  std::optional<TrainedProfile> finalized_;
};

}  // namespace forumcrawl

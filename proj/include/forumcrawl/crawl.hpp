#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forumcrawl/config.hpp"
#include "forumcrawl/control.hpp"
#include "forumcrawl/fetch.hpp"
#include "forumcrawl/keywords.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/records.hpp"
#include "forumcrawl/schedule.hpp"
#include "forumcrawl/store.hpp"

namespace forumcrawl {

/// Fetch attempts per page before the page is given up.
inline constexpr int kRetryBudget = 3;

enum class CensorVerdict { Keep, DiscardThread };

/// DiscardThread iff any post's text fields contain a blacklisted keyword.
/// Whitelist mode never discards.
CensorVerdict censor_thread_posts(const std::vector<PostRecord>& posts, const KeywordPolicy& policy);

/// Page-independent fields stamped on every extracted record.
struct PostContext {
  std::string forum_id;
  std::vector<std::string> section_path;
  std::string thread_title;
  std::string thread_url;
  int page_number = 1;
  SysTime retrieved_at{};
};

struct Extraction {
  std::vector<PostRecord> posts;
  std::vector<std::string> anomalies;
};

/// PostContent is the record spine; the other per-post labels are assigned
/// to the post whose container (the highest ancestor of the spine node that
/// holds no other spine node) contains them. Throws Error(NoSpine) when the
/// PostContent locator is untrained or matches nothing.
Extraction extract_posts(const DomSnapshot& snapshot, const PageProfile& thread_profile, const PostContext& context);

/// Leading integer of a post-count text: "1,234" -> 1234, "1.2K" -> 1200.
std::optional<long long> parse_count(std::string_view text);

struct ThreadRecord {
  std::string url;
  std::string title;
  std::vector<std::string> section_path;
  /// Page numbers in the order they were extracted.
  std::vector<int> pages;
  std::size_t posts = 0;
  VisitStatus status = VisitStatus::InProgress;
};

struct CrawlSummary {
  std::size_t threads = 0;
  std::size_t posts = 0;
  std::size_t discarded = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  /// Canonical thread URLs in the order they were entered.
  std::vector<std::string> thread_order;
  std::vector<std::string> anomalies;
  RunStatus status = RunStatus::Running;
  /// False when a terminate command or the thread limit stopped the run early.
  bool completed = false;
};

nlohmann::json summary_to_json(const CrawlSummary& summary);

struct CrawlOptions {
  std::uint64_t seed = 0;
  OperatorPrompt prompt;
  /// Stop (as if terminated) after this many threads were entered.
  std::optional<std::size_t> max_threads;
};

/// One crawl over a finalized profile. Strictly sequential; commands are
/// observed at wait points and page boundaries.
class Crawler {
 public:
  Crawler(TrainedProfile profile, CrawlConfiguration config, FetchAdapter& adapter, Store& store, Clock& clock,
          CommandChannel& commands, CrawlOptions options = {});

  CrawlSummary run();
  RunStatus status() const { return status_.load(); }
  /// Copy of the running summary.
  CrawlSummary progress() const;

  ThreadRecord traverse_thread(const std::string& entry_url, const std::string& listing_title,
                               const std::vector<std::string>& section_path);

 private:
  struct Stop {};
  struct Link {
    std::string text;
    std::string url;
  };

  PageHandle fetch(const std::string& url, PageType type);
  PageHandle follow(const Locator& locator, const PageHandle& from, PageType type);
  PageHandle settle(PageHandle handle, PageType type);
  std::vector<Link> links(const PageHandle& page, const Locator& locator) const;
  void sweep_listing(const std::string& url, PageType type, const std::vector<std::string>& section_path);
  void prepare_tickets();

  void wait_for(Seconds delay);
  void wait_until(SysTime deadline);
  void await_run_window();
  /// Applies pending commands; true when the current wait is cancelled.
  bool observe_commands();
  void flush_log();
  void archive(const PageHandle& page, std::vector<std::filesystem::path>* written);
  void note(std::string anomaly);

  TrainedProfile profile_;
  CrawlConfiguration config_;
  FetchAdapter& adapter_;
  Store& store_;
  Clock& clock_;
  CommandChannel& commands_;
  CrawlOptions options_;
  Rng rng_;
  std::atomic<RunStatus> status_{RunStatus::Running};
  mutable std::mutex summary_mu_;
  CrawlSummary summary_;
  std::optional<CivilDate> span_day_;
  std::vector<ActivitySpan> spans_;
  std::optional<SysTime> window_override_until_;
  std::map<std::string, bool> listed_;
  std::size_t entered_ = 0;
};

CrawlSummary run_crawl(const TrainedProfile& profile, const CrawlConfiguration& config, FetchAdapter& adapter,
                       Store& store, Clock& clock, CommandChannel& commands, CrawlOptions options = {});

}  // namespace forumcrawl

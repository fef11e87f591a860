#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "forumcrawl/records.hpp"

struct sqlite3;

namespace forumcrawl {

enum class VisitStatus { InProgress, Done, Discarded, Failed };

std::string_view to_string(VisitStatus status);

/// Per-thread crawl progress; the row exists from the moment the thread is
/// entered, so a restart never re-enters it.
struct VisitedThread {
  std::string url;
  VisitStatus status = VisitStatus::InProgress;
  std::string entry_url;
  /// Page to continue from after a crash mid-thread.
  std::optional<std::string> next_url;
  int pages_done = 0;
  std::string title;
  std::vector<std::string> section_path;
  bool operator==(const VisitedThread&) const = default;
};

/// 64-bit FNV-1a, hex-encoded. Used for archive names and discard keys.
std::string fnv1a_hex(std::string_view bytes);

/// SQLite-backed records, visited set, fetch log and tickets. One writer;
/// calls are serialized by an internal mutex. WAL mode lets other
/// connections read while the crawl writes.
class Store {
 public:
  /// ":memory:" opens a private in-memory store.
  explicit Store(const std::filesystem::path& path);
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Inserts records; rows whose identity already exists are skipped.
  /// Returns the number inserted.
  std::size_t append_posts(std::span<const PostRecord> records);
  std::vector<PostRecord> query(std::string_view thread_url) const;
  std::vector<PostRecord> all_posts() const;
  std::size_t post_count() const;

  bool visited_check(std::string_view thread_url) const;
  /// Inserts an InProgress row if the URL is unknown.
  void visited_mark(std::string_view thread_url);
  void begin_thread(const VisitedThread& thread);
  std::optional<VisitedThread> visited(std::string_view thread_url) const;
  std::vector<VisitedThread> threads_with_status(VisitStatus status) const;
  /// Appends one page of records and advances the thread's progress in a
  /// single transaction.
  void commit_page(std::string_view thread_url, std::span<const PostRecord> records, int page_number,
                   std::optional<std::string> next_url);
  void set_thread_status(std::string_view thread_url, VisitStatus status);
  /// Deletes the thread's records and the given fetch-log URLs, keeps only a
  /// hashed visited key, then checkpoints so the WAL holds no residue.
  void discard_thread(std::string_view thread_url, std::span<const std::string> page_urls);

  void log_fetch(const FetchLogEntry& entry);
  std::vector<FetchLogEntry> fetch_log() const;

  void save_tickets(const TicketBundle& bundle);
  TicketBundle tickets() const;

  /// One JSON record per line, ordered by (thread_url, page, ordinal).
  void export_jsonl(std::ostream& out) const;
  void export_fetch_log_jsonl(std::ostream& out) const;

  /// Flushes the WAL into the main file.
  void checkpoint();

 private:
  void exec(const char* sql) const;
  std::optional<VisitedThread> visited_locked(std::string_view thread_url) const;

  sqlite3* db_ = nullptr;
  mutable std::mutex mu_;
};

}  // namespace forumcrawl

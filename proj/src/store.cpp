#include "forumcrawl/store.hpp"

#include <sqlite3.h>

#include <cstdio>

#include "forumcrawl/error.hpp"
#include "forumcrawl/timefmt.hpp"

namespace forumcrawl {

using nlohmann::json;

namespace {

constexpr int kStoreSchemaVersion = 1;

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS posts (
  thread_url TEXT NOT NULL,
  page_number INTEGER NOT NULL,
  ordinal INTEGER NOT NULL,
  doc TEXT NOT NULL,
  PRIMARY KEY (thread_url, page_number, ordinal)
);
CREATE TABLE IF NOT EXISTS visited (
  url_key TEXT PRIMARY KEY,
  status TEXT NOT NULL,
  entry_url TEXT NOT NULL,
  next_url TEXT,
  pages_done INTEGER NOT NULL,
  title TEXT NOT NULL,
  section_path TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS fetch_log (
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  url TEXT NOT NULL,
  at TEXT NOT NULL,
  action TEXT NOT NULL,
  outcome TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS tickets (position INTEGER PRIMARY KEY, key TEXT NOT NULL, value TEXT NOT NULL);
)sql";

std::string discarded_key(std::string_view url) { return "discarded:" + fnv1a_hex(url); }

VisitStatus status_from_string(std::string_view s) {
  if (s == "done") return VisitStatus::Done;
  if (s == "discarded") return VisitStatus::Discarded;
  if (s == "failed") return VisitStatus::Failed;
  return VisitStatus::InProgress;
}

class Stmt {
 public:
  Stmt(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK)
      throw Error(ErrorCode::StoreError, std::string("prepare: ") + sqlite3_errmsg(db));
  }
  ~Stmt() { sqlite3_finalize(stmt_); }
  Stmt(const Stmt&) = delete;
  Stmt& operator=(const Stmt&) = delete;

  Stmt& bind(int i, std::string_view v) {
    check(sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Stmt& bind(int i, long long v) {
    check(sqlite3_bind_int64(stmt_, i, v));
    return *this;
  }
  Stmt& bind_null(int i) {
    check(sqlite3_bind_null(stmt_, i));
    return *this;
  }
  /// True while a row is available.
  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(ErrorCode::StoreError, std::string("step: ") + sqlite3_errmsg(db_));
  }
  void reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }
  int changes() const { return sqlite3_changes(db_); }
  std::string text(int col) const {
    auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : std::string();
  }
  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  long long integer(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) throw Error(ErrorCode::StoreError, std::string("bind: ") + sqlite3_errmsg(db_));
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

VisitedThread visited_from_row(const Stmt& s) {
  VisitedThread v;
  v.url = s.text(0);
  v.status = status_from_string(s.text(1));
  v.entry_url = s.text(2);
  if (!s.is_null(3)) v.next_url = s.text(3);
  v.pages_done = static_cast<int>(s.integer(4));
  v.title = s.text(5);
  v.section_path = json::parse(s.text(6)).get<std::vector<std::string>>();
  return v;
}

}  // namespace

std::string_view to_string(VisitStatus status) {
  switch (status) {
    case VisitStatus::InProgress: return "in_progress";
    case VisitStatus::Done: return "done";
    case VisitStatus::Discarded: return "discarded";
    case VisitStatus::Failed: return "failed";
  }
  return "in_progress";
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Store::Store(const std::filesystem::path& path) {
  int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX;
  if (sqlite3_open_v2(path.string().c_str(), &db_, flags, nullptr) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw Error(ErrorCode::StoreError, "cannot open " + path.string() + ": " + msg);
  }
  sqlite3_busy_timeout(db_, 5000);
  try {
    exec("PRAGMA secure_delete=ON");
    exec("PRAGMA journal_mode=WAL");
    exec("PRAGMA synchronous=FULL");
    exec(kSchema);
    Stmt get(db_, "SELECT value FROM meta WHERE key='schema_version'");
    if (get.step()) {
      if (get.text(0) != std::to_string(kStoreSchemaVersion))
        throw Error(ErrorCode::SchemaMismatch, "store schema_version " + get.text(0) + " is not supported");
    } else {
      Stmt put(db_, "INSERT INTO meta(key, value) VALUES('schema_version', ?)");
      put.bind(1, std::to_string(kStoreSchemaVersion)).step();
    }
  } catch (...) {
    sqlite3_close(db_);
    throw;
  }
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const char* sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error(ErrorCode::StoreError, msg);
  }
}

namespace {

std::size_t insert_posts(sqlite3* db, std::span<const PostRecord> records) {
  Stmt ins(db, "INSERT OR IGNORE INTO posts(thread_url, page_number, ordinal, doc) VALUES(?, ?, ?, ?)");
  std::size_t inserted = 0;
  for (const auto& r : records) {
    ins.bind(1, r.thread_url).bind(2, r.page_number).bind(3, r.ordinal).bind(4, record_to_json(r).dump());
    ins.step();
    inserted += static_cast<std::size_t>(ins.changes());
    ins.reset();
  }
  return inserted;
}

class Transaction {
 public:
  explicit Transaction(sqlite3* db) : db_(db) { run("BEGIN IMMEDIATE"); }
  ~Transaction() {
    if (!done_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
  }
  void commit() {
    run("COMMIT");
    done_ = true;
  }

 private:
  void run(const char* sql) {
    if (sqlite3_exec(db_, sql, nullptr, nullptr, nullptr) != SQLITE_OK)
      throw Error(ErrorCode::StoreError, std::string(sql) + ": " + sqlite3_errmsg(db_));
  }
  sqlite3* db_;
  bool done_ = false;
};

}  // namespace

std::size_t Store::append_posts(std::span<const PostRecord> records) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  auto n = insert_posts(db_, records);
  tx.commit();
  return n;
}

std::vector<PostRecord> Store::query(std::string_view thread_url) const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT doc FROM posts WHERE thread_url = ? ORDER BY page_number, ordinal");
  s.bind(1, thread_url);
  std::vector<PostRecord> out;
  while (s.step()) out.push_back(record_from_json(json::parse(s.text(0))));
  return out;
}

std::vector<PostRecord> Store::all_posts() const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT doc FROM posts ORDER BY thread_url, page_number, ordinal");
  std::vector<PostRecord> out;
  while (s.step()) out.push_back(record_from_json(json::parse(s.text(0))));
  return out;
}

std::size_t Store::post_count() const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT COUNT(*) FROM posts");
  s.step();
  return static_cast<std::size_t>(s.integer(0));
}

bool Store::visited_check(std::string_view thread_url) const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT 1 FROM visited WHERE url_key = ? OR url_key = ?");
  s.bind(1, thread_url).bind(2, discarded_key(thread_url));
  return s.step();
}

void Store::visited_mark(std::string_view thread_url) {
  begin_thread(VisitedThread{std::string(thread_url), VisitStatus::InProgress, std::string(thread_url), {}, 0, {}, {}});
}

void Store::begin_thread(const VisitedThread& t) {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "INSERT OR IGNORE INTO visited(url_key, status, entry_url, next_url, pages_done, title, section_path) "
         "VALUES(?, ?, ?, ?, ?, ?, ?)");
  s.bind(1, t.url).bind(2, to_string(t.status)).bind(3, t.entry_url);
  if (t.next_url)
    s.bind(4, *t.next_url);
  else
    s.bind_null(4);
  s.bind(5, t.pages_done).bind(6, t.title).bind(7, json(t.section_path).dump());
  s.step();
}

std::optional<VisitedThread> Store::visited_locked(std::string_view thread_url) const {
  Stmt s(db_,
         "SELECT url_key, status, entry_url, next_url, pages_done, title, section_path FROM visited "
         "WHERE url_key = ? OR url_key = ?");
  s.bind(1, thread_url).bind(2, discarded_key(thread_url));
  if (!s.step()) return std::nullopt;
  return visited_from_row(s);
}

std::optional<VisitedThread> Store::visited(std::string_view thread_url) const {
  std::lock_guard lock(mu_);
  return visited_locked(thread_url);
}

std::vector<VisitedThread> Store::threads_with_status(VisitStatus status) const {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "SELECT url_key, status, entry_url, next_url, pages_done, title, section_path FROM visited "
         "WHERE status = ? ORDER BY rowid");
  s.bind(1, to_string(status));
  std::vector<VisitedThread> out;
  while (s.step()) out.push_back(visited_from_row(s));
  return out;
}

void Store::commit_page(std::string_view thread_url, std::span<const PostRecord> records, int page_number,
                        std::optional<std::string> next_url) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  insert_posts(db_, records);
  Stmt s(db_, "UPDATE visited SET pages_done = MAX(pages_done, ?), next_url = ? WHERE url_key = ?");
  s.bind(1, page_number);
  if (next_url)
    s.bind(2, *next_url);
  else
    s.bind_null(2);
  s.bind(3, thread_url);
  s.step();
  if (s.changes() == 0) throw Error(ErrorCode::StoreError, "commit_page for a thread that was never begun");
  tx.commit();
}

void Store::set_thread_status(std::string_view thread_url, VisitStatus status) {
  std::lock_guard lock(mu_);
  Stmt s(db_, "UPDATE visited SET status = ? WHERE url_key = ?");
  s.bind(1, to_string(status)).bind(2, thread_url);
  s.step();
}

void Store::discard_thread(std::string_view thread_url, std::span<const std::string> page_urls) {
  std::lock_guard lock(mu_);
  {
    Transaction tx(db_);
    Stmt del_posts(db_, "DELETE FROM posts WHERE thread_url = ?");
    del_posts.bind(1, thread_url).step();
    Stmt del_log(db_, "DELETE FROM fetch_log WHERE url = ?");
    for (const auto& u : page_urls) {
      del_log.bind(1, u).step();
      del_log.reset();
    }
    del_log.bind(1, thread_url).step();
    Stmt del_visit(db_, "DELETE FROM visited WHERE url_key = ?");
    del_visit.bind(1, thread_url).step();
    auto key = discarded_key(thread_url);
    Stmt ins(db_,
             "INSERT OR REPLACE INTO visited(url_key, status, entry_url, next_url, pages_done, title, section_path) "
             "VALUES(?, 'discarded', ?, NULL, 0, '', '[]')");
    ins.bind(1, key).bind(2, key).step();
    tx.commit();
  }
  exec("PRAGMA wal_checkpoint(TRUNCATE)");
}

void Store::log_fetch(const FetchLogEntry& e) {
  std::lock_guard lock(mu_);
  Stmt s(db_, "INSERT INTO fetch_log(url, at, action, outcome) VALUES(?, ?, ?, ?)");
  s.bind(1, e.url).bind(2, format_timestamp(e.at)).bind(3, e.action).bind(4, e.outcome);
  s.step();
}

std::vector<FetchLogEntry> Store::fetch_log() const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT url, at, action, outcome FROM fetch_log ORDER BY id");
  std::vector<FetchLogEntry> out;
  while (s.step())
    out.push_back({s.text(0), parse_timestamp(s.text(1)).value_or(SysTime{}), s.text(2), s.text(3)});
  return out;
}

void Store::save_tickets(const TicketBundle& bundle) {
  std::lock_guard lock(mu_);
  Transaction tx(db_);
  exec("DELETE FROM tickets");
  Stmt s(db_, "INSERT INTO tickets(position, key, value) VALUES(?, ?, ?)");
  long long i = 0;
  for (const auto& [k, v] : bundle.pairs) {
    s.bind(1, i++).bind(2, k).bind(3, v).step();
    s.reset();
  }
  tx.commit();
}

TicketBundle Store::tickets() const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT key, value FROM tickets ORDER BY position");
  TicketBundle b;
  while (s.step()) b.pairs.emplace_back(s.text(0), s.text(1));
  return b;
}

void Store::export_jsonl(std::ostream& out) const {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT doc FROM posts ORDER BY thread_url, page_number, ordinal");
  while (s.step()) out << s.text(0) << '\n';
}

void Store::export_fetch_log_jsonl(std::ostream& out) const {
  for (const auto& e : fetch_log()) out << fetch_log_to_json(e).dump() << '\n';
}

void Store::checkpoint() {
  std::lock_guard lock(mu_);
  exec("PRAGMA wal_checkpoint(TRUNCATE)");
}

}  // namespace forumcrawl

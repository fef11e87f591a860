#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "forumcrawl/crawl.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/fixturegen.hpp"
#include "forumcrawl/timefmt.hpp"
#include "forumcrawl/url.hpp"

using namespace forumcrawl;
namespace fs = std::filesystem;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::StoreError;
}

Locator loc(const std::string& expr, std::optional<std::string> fmt = std::nullopt) {
  return Locator{XPathExpr::parse(expr), Strategy::Manual, {}, std::move(fmt)};
}

const SysTime kStart = SysTime{} + std::chrono::seconds(1'700'000'000);

fs::path temp_root(const std::string& name) {
  return fs::temp_directory_path() / ("forumcrawl_crawl_" + name + "_" + std::to_string(::getpid()));
}

/// Generated forum plus a crawl environment on a simulated clock.
struct Rig {
  GeneratedForum forum;
  std::shared_ptr<FixtureSite> site;
  SimulatedClock clock{kStart};
  CommandChannel commands;

  explicit Rig(const std::string& name, FixtureGenOptions options) {
    forum = generate_fixture_forum(temp_root(name), options);
    site = std::make_shared<FixtureSite>(forum.root);
  }
  ~Rig() { fs::remove_all(forum.root); }

  std::unique_ptr<FixtureAdapter> adapter() {
    FixtureOptions o;
    o.now = [this] { return clock.now(); };
    return std::make_unique<FixtureAdapter>(site, o);
  }

  CrawlSummary crawl(Store& store, std::uint64_t seed, std::optional<std::size_t> max_threads = std::nullopt,
                     const TrainedProfile* profile = nullptr, OperatorPrompt prompt = {}) {
    auto a = adapter();
    CrawlOptions o;
    o.seed = seed;
    o.max_threads = max_threads;
    o.prompt = std::move(prompt);
    return run_crawl(profile ? *profile : forum.profile, forum.config, *a, store, clock, commands, o);
  }
};

FixtureGenOptions small(int sections = 2, int subsections = 2, int threads = 4, int pages = 3, int posts = 2) {
  FixtureGenOptions o;
  o.sections = sections;
  o.subsections = subsections;
  o.threads = threads;
  o.pages = pages;
  o.posts = posts;
  o.threads_per_listing_page = 3;
  return o;
}

using RecordKey = std::tuple<std::string, int, int, std::string>;
std::set<RecordKey> record_set(const Store& store) {
  std::set<RecordKey> out;
  for (const auto& r : store.all_posts()) out.insert({r.thread_url, r.page_number, r.ordinal, r.content_text});
  return out;
}

std::map<std::string, int> open_counts(const Store& store) {
  std::map<std::string, int> n;
  for (const auto& e : store.fetch_log())
    if (e.action == "open" || e.action == "click") ++n[e.url];
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

// --- extraction --------------------------------------------------------------

TEST(Extract, UniformPostsAndMissingFields) {
  auto snap = parse_snapshot(
      "<html><body><h1>T</h1>"
      "<article><a class='u'>alice</a><dd class='c'>1,204</dd><dd class='r'>Jan 05, 2019</dd>"
      "<time>Mar 01, 2021</time><div class='m'>first post here</div></article>"
      "<article><a class='u'>bob</a><dd class='c'>3.4K</dd>"
      "<time>yesterday</time><div class='m'>second <b>bold</b> post</div></article>"
      "<article><a class='u'>carol</a><dd class='c'>7</dd><dd class='r'>Feb 11, 2020</dd>"
      "<time>Apr 02, 2021</time><div class='m'>third</div></article>"
      "<a class='u'>sidebar</a></body></html>",
      "http://f/t/1/");
  PageProfile p;
  p.labels[LabelKind::PostContent] = loc("//div[@class='m']");
  p.labels[LabelKind::PostAuthor] = loc("//a[@class='u']");
  p.labels[LabelKind::AuthorPostCount] = loc("//dd[@class='c']");
  p.labels[LabelKind::AuthorRegistrationDate] = loc("//dd[@class='r']", "%b %d, %Y");
  p.labels[LabelKind::PostDate] = loc("//time", "%b %d, %Y");
  PostContext ctx{"f", {"S"}, "T", "http://f/t/1/", 2, kStart};
  auto ex = extract_posts(snap, p, ctx);
  ASSERT_EQ(ex.posts.size(), 3u);
  EXPECT_EQ(ex.posts[0].author_name, "alice");
  EXPECT_EQ(ex.posts[0].author_post_count, 1204);
  EXPECT_EQ(ex.posts[1].author_post_count, 3400);
  EXPECT_EQ(ex.posts[1].content_text, "second bold post");
  EXPECT_EQ(ex.posts[1].content_html, "<div class=\"m\">second <b>bold</b> post</div>");
  EXPECT_FALSE(ex.posts[1].author_registration_date);
  ASSERT_TRUE(ex.posts[1].post_date);
  EXPECT_FALSE(ex.posts[1].post_date->parse_ok);
  EXPECT_EQ(ex.posts[1].post_date->raw, "yesterday");
  ASSERT_TRUE(ex.posts[0].post_date->parse_ok);
  EXPECT_EQ(format_timestamp(*ex.posts[0].post_date->value), "2021-03-01T00:00:00Z");
  EXPECT_EQ(format_timestamp(*ex.posts[2].author_registration_date->value), "2020-02-11T00:00:00Z");
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(ex.posts[static_cast<std::size_t>(i)].ordinal, i);
    EXPECT_EQ(ex.posts[static_cast<std::size_t>(i)].page_number, 2);
    EXPECT_EQ(ex.posts[static_cast<std::size_t>(i)].section_path, std::vector<std::string>{"S"});
  }
  ASSERT_EQ(ex.anomalies.size(), 1u);
  EXPECT_NE(ex.anomalies[0].find("post_author"), std::string::npos);
}

TEST(Extract, NoSpine) {
  auto snap = parse_snapshot("<p>nothing</p>", "u");
  PageProfile p;
  PostContext ctx;
  EXPECT_EQ(code_of([&] { extract_posts(snap, p, ctx); }), ErrorCode::NoSpine);
  p.labels[LabelKind::PostContent] = loc("//div");
  EXPECT_EQ(code_of([&] { extract_posts(snap, p, ctx); }), ErrorCode::NoSpine);
}

TEST(Extract, NestedQuoteStaysInOuterPost) {
  auto snap = parse_snapshot("<div class='m'>outer <div class='m'>quoted</div></div><div class='m'>next</div>", "u");
  PageProfile p;
  p.labels[LabelKind::PostContent] = loc("//div[@class='m']");
  auto ex = extract_posts(snap, p, {});
  ASSERT_EQ(ex.posts.size(), 2u);
  EXPECT_EQ(ex.posts[0].content_text, "outer quoted");
}

TEST(Extract, ParseCount) {
  EXPECT_EQ(parse_count("Messages: 12"), 12);
  EXPECT_EQ(parse_count("1,234"), 1234);
  EXPECT_EQ(parse_count("2.5k"), 2500);
  EXPECT_EQ(parse_count("1M"), 1000000);
  EXPECT_FALSE(parse_count("none"));
}

// --- censoring ---------------------------------------------------------------

TEST(Censor, MidThreadKeyword) {
  KeywordPolicy policy;
  policy.blacklist = {"GF", "nudes", "photos", "snapchat", "naked"};
  std::vector<PostRecord> posts(10);
  for (int i = 0; i < 10; ++i) posts[static_cast<std::size_t>(i)].content_text = "harmless text " + std::to_string(i);
  EXPECT_EQ(censor_thread_posts(posts, policy), CensorVerdict::Keep);
  posts[6].content_text = "ping me on snapchatting";
  EXPECT_EQ(censor_thread_posts(posts, policy), CensorVerdict::Keep);
  posts[6].content_text = "ping me on Snapchat.";
  EXPECT_EQ(censor_thread_posts(posts, policy), CensorVerdict::DiscardThread);
  posts[6].content_text = "fine";
  posts[2].content_html = "<img alt=\"nudes\">";
  EXPECT_EQ(censor_thread_posts(posts, policy), CensorVerdict::DiscardThread);
  policy.mode = KeywordPolicy::Mode::WhitelistOnly;
  EXPECT_EQ(censor_thread_posts(posts, policy), CensorVerdict::Keep);
}

// --- full crawls ------------------------------------------------------------

TEST(Crawl, CompleteSmallForumVisitsEachThreadOnce) {
  Rig rig("complete", small());
  Store store(":memory:");
  auto s = rig.crawl(store, 1);
  EXPECT_EQ(s.status, RunStatus::Terminated);
  EXPECT_TRUE(s.completed);
  EXPECT_EQ(s.threads, 16u);
  EXPECT_EQ(s.posts, 16u * 3 * 2);
  EXPECT_EQ(store.post_count(), 96u);
  EXPECT_EQ(s.thread_order.size(), 16u);
  EXPECT_TRUE(s.anomalies.empty()) << s.anomalies.front();
  for (const auto& [url, n] : open_counts(store)) EXPECT_EQ(n, 1) << url;
  for (const auto& u : rig.forum.expected["thread_urls"]) {
    auto v = store.visited(u.get<std::string>());
    ASSERT_TRUE(v) << u;
    EXPECT_EQ(v->status, VisitStatus::Done);
    EXPECT_EQ(v->pages_done, 3);
  }
  auto posts = store.query("http://forum.test/threads/t1/");
  ASSERT_EQ(posts.size(), 6u);
  EXPECT_EQ(posts[0].section_path, (std::vector<std::string>{"Section 1", "Sub 1.1"}));
  EXPECT_NE(posts[0].thread_title.find("Thread 1 "), std::string::npos);
  EXPECT_TRUE(posts[0].post_date->parse_ok);
  EXPECT_TRUE(posts[0].author_registration_date->parse_ok);
  EXPECT_TRUE(posts[0].author_post_count);
  EXPECT_EQ(posts[0].content_text.substr(0, 7), "t1p1n0 ");
}

TEST(Crawl, SeedsChangeOrderNotRecords) {
  Rig a("seed_a", small());
  Store sa(":memory:"), sb(":memory:");
  auto first = a.crawl(sa, 1);
  Rig b("seed_b", small());
  auto second = b.crawl(sb, 2);
  EXPECT_NE(first.thread_order, second.thread_order);
  EXPECT_EQ(record_set(sa), record_set(sb));
  auto sorted_a = first.thread_order, sorted_b = second.thread_order;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  EXPECT_EQ(sorted_a, sorted_b);
}

TEST(Crawl, WithoutSubsections) {
  Rig rig("nosub", small(2, 0, 5, 2, 2));
  Store store(":memory:");
  auto s = rig.crawl(store, 3);
  EXPECT_EQ(s.threads, 10u);
  EXPECT_EQ(store.post_count(), 40u);
  EXPECT_EQ(store.query("http://forum.test/threads/t1/")[0].section_path, std::vector<std::string>{"Section 1"});
}

TEST(Crawl, LastPageLandingCollectsAscendingPages) {
  auto o = small(1, 1, 3, 4, 2);
  o.last_page_landing = true;
  Rig rig("landing", o);
  Store store(":memory:");
  auto a = rig.adapter();
  Crawler crawler(rig.forum.profile, rig.forum.config, *a, store, rig.clock, rig.commands, {});
  auto rec = crawler.traverse_thread("http://forum.test/threads/t2/page-4", "Thread 2", {"S"});
  EXPECT_EQ(rec.pages, (std::vector<int>{1, 2, 3, 4}));
  auto posts = store.query(rec.url);
  ASSERT_EQ(posts.size(), 8u);
  for (std::size_t i = 0; i < posts.size(); ++i)
    EXPECT_EQ(posts[i].content_text.substr(0, 6), "t2p" + std::to_string(i / 2 + 1) + "n" + std::to_string(i % 2));

  Store full(":memory:");
  auto s = rig.crawl(full, 5);
  EXPECT_EQ(full.post_count(), 3u * 4 * 2);
}

TEST(Crawl, UntrainedNextPageStopsAtEntry) {
  Rig rig("nonext", small(1, 1, 2, 3, 2));
  auto profile = rig.forum.profile;
  profile.pages[PageType::Thread].labels.erase(LabelKind::NextPage);
  Store store(":memory:");
  rig.crawl(store, 1, std::nullopt, &profile);
  EXPECT_EQ(store.post_count(), 2u * 2);
}

TEST(Crawl, CensoringLeavesNoTrace) {
  auto o = small(1, 2, 5, 3, 3);
  o.blacklisted_titles = 2;
  o.blacklisted_content = 3;
  Rig rig("censor", o);
  auto db = rig.forum.root / "store" / "crawl.db";
  fs::create_directories(db.parent_path());
  std::string exported, log_exported;
  {
    Store store(db);
    auto s = rig.crawl(store, 9);
    EXPECT_EQ(s.skipped, 2u);
    EXPECT_EQ(s.discarded, 3u);
    EXPECT_EQ(s.threads, 5u);
    EXPECT_EQ(store.post_count(), rig.forum.expected["posts"].get<std::size_t>());
    EXPECT_EQ(s.posts, store.post_count());
    std::ostringstream a, b;
    store.export_jsonl(a);
    store.export_fetch_log_jsonl(b);
    exported = a.str();
    log_exported = b.str();
    for (const auto& u : rig.forum.expected["censored_content_urls"]) {
      auto v = store.visited(u.get<std::string>());
      EXPECT_TRUE(!v || v->status != VisitStatus::InProgress);
      EXPECT_TRUE(store.query(u.get<std::string>()).empty());
    }
  }
  for (const auto& kw : o.blacklist) {
    EXPECT_FALSE(contains_keyword(exported, kw)) << kw;
    EXPECT_FALSE(contains_keyword(log_exported, kw)) << kw;
  }
  std::set<std::string> markers;
  for (const auto& u : rig.forum.expected["censored_content_urls"]) {
    auto url = u.get<std::string>();
    // Post bodies start with "t<k>p<page>n<ordinal>"; listing pages may still link the thread.
    auto id = url.substr(std::string("http://forum.test/threads/").size());
    markers.insert("bbWrapper\">" + id.substr(0, id.size() - 1) + "p");
    markers.insert("_" + fnv1a_hex(url) + ".html");
  }
  std::size_t archived = 0;
  for (const auto& dir : {db.parent_path(), fs::path(rig.forum.config.archive_dir)})
    for (const auto& f : fs::recursive_directory_iterator(dir)) {
      if (!f.is_regular_file()) continue;
      ++archived;
      auto bytes = slurp(f.path());
      for (const auto& kw : o.blacklist) EXPECT_FALSE(contains_keyword(bytes, kw)) << f.path() << " " << kw;
      for (const auto& m : markers) {
        EXPECT_EQ(bytes.find(m), std::string::npos) << f.path() << " " << m;
        EXPECT_EQ(f.path().filename().string().find(m), std::string::npos) << f.path();
      }
    }
  EXPECT_GT(archived, 5u);
}

TEST(Crawl, HiddenContentNeedsScript) {
  auto o = small(1, 0, 2, 2, 3);
  o.hidden_content = true;
  Rig rig("hidden", o);
  auto without = rig.forum.profile;
  without.pages[PageType::Thread].script.reset();
  Store bare(":memory:");
  auto s = rig.crawl(bare, 1, std::nullopt, &without);
  EXPECT_EQ(bare.post_count(), 0u);
  EXPECT_EQ(s.anomalies.size(), 4u);
  Store full(":memory:");
  rig.crawl(full, 1);
  EXPECT_EQ(full.post_count(), 2u * 2 * 3);
}

TEST(Crawl, TicketGate) {
  auto o = small(1, 0, 1, 1, 1);
  o.ticket_gate = true;
  Rig rig("tickets", o);
  Store store(":memory:");
  EXPECT_EQ(code_of([&] { rig.crawl(store, 1); }), ErrorCode::FetchFailed);
  auto log = store.fetch_log();
  ASSERT_FALSE(log.empty());
  EXPECT_EQ(log.back().outcome, "interstitial");

  int asked = 0;
  auto s = rig.crawl(store, 1, std::nullopt, nullptr, [&](PromptKind kind, const std::string&) {
    EXPECT_EQ(kind, PromptKind::Tickets);
    ++asked;
    return std::string("cf-commitment-2.58=abc\ncf-tokens=[\"t1\",\"t2\"]\n");
  });
  EXPECT_EQ(asked, 1);
  EXPECT_EQ(store.post_count(), 1u);
  EXPECT_EQ(store.tickets().pairs.size(), 2u);
}

TEST(Crawl, ResumeAfterCrashMatchesUninterruptedRun) {
  auto o = small(1, 2, 4, 3, 2);
  Rig reference("resume_ref", o);
  Store ref(":memory:");
  reference.crawl(ref, 4);

  Rig rig("resume", o);
  auto db = rig.forum.root / "state" / "crawl.db";
  fs::create_directories(db.parent_path());
  {
    Store store(db);
    // Terminate mid-thread: during the reading delay of the second thread's page 2.
    int seen = 0;
    rig.clock.on_sleep = [&](SysTime, SysTime) {
      auto log = store.fetch_log();
      if (!log.empty() && log.back().url.ends_with("/page-2") && log.back().url.find("/threads/") != std::string::npos &&
          ++seen == 2)
        rig.commands.post(Command::Terminate);
    };
    auto first = rig.crawl(store, 4);
    rig.clock.on_sleep = nullptr;
    EXPECT_GE(first.thread_order.size(), 1u);
    EXPECT_FALSE(store.threads_with_status(VisitStatus::InProgress).empty());
  }
  {
    Store store(db);
    auto second = rig.crawl(store, 4);
    EXPECT_EQ(record_set(store), record_set(ref));
    for (const auto& [url, n] : open_counts(store))
      if (url.find("/threads/") != std::string::npos) EXPECT_EQ(n, 1) << url;
    EXPECT_TRUE(store.threads_with_status(VisitStatus::InProgress).empty());
  }
}

TEST(Crawl, MaxThreadsStopsCleanly) {
  Rig rig("max", small(1, 1, 4, 2, 1));
  Store store(":memory:");
  auto s = rig.crawl(store, 1, 2);
  EXPECT_EQ(s.threads, 2u);
  EXPECT_FALSE(s.completed);
  EXPECT_EQ(store.post_count(), 4u);
}

TEST(Crawl, MutatingThreadLinksNeedUnion) {
  auto o = small(1, 1, 4, 2, 1);
  o.mutate_thread_links = true;
  Rig rig("mutate", o);
  // Training-time visit of every listing page (first visit shows v1).
  {
    auto a = rig.adapter();
    for (auto path : {"/forums/s1-1/", "/forums/s1-1/page-2"}) a->open(std::string("http://forum.test") + path);
  }
  auto v1_only = rig.forum.profile;
  for (auto type : {PageType::Section, PageType::Subsection})
    v1_only.pages[type].labels[LabelKind::ThreadLink] = loc("//div[@class='structItem-title']/a");
  Store broken(":memory:");
  EXPECT_EQ(rig.crawl(broken, 1, std::nullopt, &v1_only).threads, 0u);
  Store store(":memory:");
  auto s = rig.crawl(store, 1);
  EXPECT_EQ(s.threads, 4u);
  EXPECT_EQ(store.post_count(), 8u);
}

// --- pacing and commands -------------------------------------------------------

TEST(CrawlPacing, NonThreadFetchesAreSpacedAndImagesOff) {
  Rig rig("pacing", small(1, 2, 3, 2, 2));
  Store store(":memory:");
  rig.crawl(store, 7);
  auto log = store.fetch_log();
  std::optional<SysTime> previous;
  for (const auto& e : log) {
    EXPECT_NE(e.action, "image");
    if (e.action != "open") continue;
    if (previous && e.url.find("/threads/") == std::string::npos) {
      auto gap = std::chrono::duration<double>(e.at - *previous).count();
      EXPECT_GE(gap, 5.0) << e.url;
    }
    previous = e.at;
  }
}

TEST(CrawlPacing, ThreadPagesWaitForReading) {
  Rig rig("reading", small(1, 1, 2, 3, 4));
  Store store(":memory:");
  rig.crawl(store, 7);
  auto log = store.fetch_log();
  std::map<std::pair<std::string, int>, std::size_t> words;
  for (const auto& r : store.all_posts()) {
    std::istringstream in(r.content_text);
    std::string w;
    while (in >> w) ++words[{r.thread_url, r.page_number}];
  }
  for (std::size_t i = 1; i < log.size(); ++i) {
    const auto& prev = log[i - 1];
    const auto& cur = log[i];
    if (prev.url.find("/threads/") == std::string::npos || cur.url.find("/threads/") == std::string::npos) continue;
    auto canon = canonical_thread_url(prev.url);
    if (canon != canonical_thread_url(cur.url)) continue;
    auto path = prev.url.substr(canon.size());
    int page = path.empty() ? 1 : std::stoi(path.substr(5));
    double floor = static_cast<double>(words[{canon, page}]) / 240.0 * 60.0;
    EXPECT_GE(std::chrono::duration<double>(cur.at - prev.at).count() + 1e-6, floor) << cur.url;
  }
}

TEST(CrawlPacing, ScheduleWindowsGateFetches) {
  Rig rig("schedule", small(1, 1, 2, 2, 1));
  auto& sch = rig.forum.config.schedule;
  for (auto& day : sch.days) day = {WorkWindow{LocalTime{10, 0}, LocalTime{10, 30}, {}}};
  Store store(":memory:");
  rig.crawl(store, 2);
  EXPECT_EQ(store.post_count(), 4u);
  for (const auto& e : store.fetch_log()) {
    auto day = local_date("UTC", e.at);
    auto spans = compile_schedule(sch, day, 2 * 1000003u + static_cast<std::uint64_t>(day.year * 10000 + day.month * 100 + day.day));
    EXPECT_TRUE(std::holds_alternative<RunUntil>(next_action(spans, e.at)) ||
                e.action != "open")
        << e.url << " " << format_timestamp(e.at);
  }
}

TEST(CrawlCommands, ResumeCutsReadingDelay) {
  Rig rig("resume_cmd", small(1, 1, 1, 2, 5));
  Store store(":memory:");
  std::vector<std::pair<SysTime, SysTime>> sleeps;
  bool posted = false;
  rig.clock.on_sleep = [&](SysTime now, SysTime deadline) {
    sleeps.push_back({now, deadline});
    if (!posted && deadline - now > std::chrono::seconds(20)) {
      posted = true;
      rig.commands.post(Command::Resume);
    }
  };
  auto start = rig.clock.now();
  rig.crawl(store, 1);
  ASSERT_TRUE(posted);
  EXPECT_EQ(store.post_count(), 10u);
  // The cut wait never advanced the clock to its deadline.
  auto cut = std::find_if(sleeps.begin(), sleeps.end(), [](auto& s) { return s.second - s.first > std::chrono::seconds(20); });
  ASSERT_NE(cut, sleeps.end());
  auto next = std::next(cut);
  ASSERT_NE(next, sleeps.end());
  EXPECT_EQ(next->first, cut->first);
  EXPECT_GT(rig.clock.now(), start);
}

TEST(CrawlCommands, PauseBlocksUntilResumeAndTerminateStops) {
  Rig rig("pause", small(1, 1, 3, 2, 1));
  Store store(":memory:");
  auto a = rig.adapter();
  Crawler crawler(rig.forum.profile, rig.forum.config, *a, store, rig.clock, rig.commands, {});
  std::atomic<int> sleeps{0};
  std::atomic<bool> resumed{false}, terminated{false};
  rig.clock.on_sleep = [&](SysTime, SysTime) {
    if (++sleeps == 3) rig.commands.post(Command::Pause);
    if (resumed && !terminated && crawler.progress().threads >= 1) {
      terminated = true;
      rig.commands.post(Command::Terminate);
    }
  };
  CrawlSummary summary;
  std::thread worker([&] { summary = crawler.run(); });
  for (int i = 0; i < 400 && crawler.status() != RunStatus::Paused; ++i)
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  ASSERT_EQ(crawler.status(), RunStatus::Paused);
  auto fetched = store.fetch_log().size();
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  EXPECT_EQ(store.fetch_log().size(), fetched);
  resumed = true;
  rig.commands.post(Command::Resume);
  worker.join();
  EXPECT_TRUE(terminated);
  EXPECT_EQ(summary.status, RunStatus::Terminated);
  EXPECT_GE(summary.threads, 1u);
  EXPECT_LT(summary.threads, 3u);
  EXPECT_FALSE(a->current());
  EXPECT_EQ(code_of([&] { handle_command(RunStatus::Terminated, Command::Terminate); }), ErrorCode::InvalidTransition);
}

TEST(FixtureGen, ExpectedCountsMatchBruteForce) {
  auto root = temp_root("gen");
  FixtureGenOptions o;  // 3 x 2 x 20 x 3 x 5
  auto forum = generate_fixture_forum(root, o);
  std::size_t thread_dirs = 0, post_articles = 0;
  for (const auto& f : fs::recursive_directory_iterator(root / "threads")) {
    if (f.is_directory()) ++thread_dirs;
    if (!f.is_regular_file()) continue;
    auto bytes = slurp(f.path());
    for (auto at = bytes.find("<article"); at != std::string::npos; at = bytes.find("<article", at + 1)) ++post_articles;
  }
  EXPECT_EQ(thread_dirs, 120u);
  EXPECT_EQ(post_articles, 1800u);
  EXPECT_EQ(forum.expected["posts"], 1800);
  EXPECT_EQ(forum.expected["threads"], 120);
  EXPECT_EQ(load_profile(root / "profile.json"), forum.profile);
  auto cfg = load_configuration(root / "config.json");
  EXPECT_TRUE(fs::equivalent(cfg.driver.fixture_root, root));
  fs::remove_all(root);
}

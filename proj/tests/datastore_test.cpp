#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "forumcrawl/config.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/keywords.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/records.hpp"
#include "forumcrawl/store.hpp"
#include "forumcrawl/timefmt.hpp"

using namespace forumcrawl;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("forumcrawl_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CrawlConfiguration full_config() {
  CrawlConfiguration c;
  c.forum_id = "xss";
  c.urls = {"http://xss.test/login", "http://xss.test/", "http://xss.test/forums/7/", "http://xss.test/forums/71/",
            "http://xss.test/threads/100/"};
  c.credentials = {"analyst", "hunter2-s3cret"};
  c.schedule.timezone = "Europe/Amsterdam";
  for (int d = 0; d < 5; ++d) c.schedule.days[d] = {{LocalTime{17, 0}, LocalTime{20, 0}, {}}};
  for (int d = 5; d < 7; ++d)
    c.schedule.days[d] = {{LocalTime{9, 30}, LocalTime{13, 30}, {{LocalTime{10, 30}, LocalTime{11, 0}}}}};
  c.schedule.session_variance_min = 10;
  c.schedule.break_variance_min = 10;
  c.schedule.interrupt_duration_min = std::make_pair(5, 15);
  c.schedule.interrupt_min_gap_min = 25;
  c.wpm_range = {180, 240};
  c.keyword_policy.blacklist = {"GF", "nudes", "photos", "snapchat", "naked"};
  c.download_images = true;
  c.proxy = "socks5://127.0.0.1:9050";
  c.needs_cf_tickets = true;
  c.load_timeout_s = 45;
  c.mask_automation = false;
  c.driver.kind = DriverKind::WebDriver;
  c.driver.webdriver_url = "http://127.0.0.1:4445";
  c.store_path = "/var/tmp/xss.db";
  c.archive_dir = "/var/tmp/archive";
  c.profile_path = "/var/tmp/xss-profile.json";
  return c;
}

PostRecord sample_record(int page, int ordinal, std::string content = "hello world") {
  PostRecord r;
  r.forum_id = "xss";
  r.section_path = {"Market", "Sellers"};
  r.thread_title = "Selling accounts";
  r.thread_url = "http://xss.test/threads/100/";
  r.page_number = page;
  r.ordinal = ordinal;
  r.author_name = "user" + std::to_string(ordinal);
  r.author_post_count = 42;
  r.author_popularity = std::nullopt;
  r.author_registration_date = ParsedDate{"Jan 3, 2019", parse_timestamp("2019-01-03T00:00:00Z"), true};
  r.post_date = ParsedDate{"yesterday-ish", std::nullopt, false};
  r.content_text = content;
  r.content_html = "<div class=\"bbWrapper\">" + content + "</div>";
  r.retrieved_at = parse_timestamp("2024-01-15T16:00:00.25Z").value();
  return r;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

// --- configuration ---------------------------------------------------------

TEST(Config, FullRoundTrip) {
  auto c = full_config();
  EXPECT_EQ(configuration_from_json(configuration_to_json(c, false)), c);
}

TEST(Config, FileRoundTripWithoutSubsection) {
  auto dir = temp_dir("cfg");
  auto c = full_config();
  c.urls.subsection.reset();
  save_configuration(c, dir / "c.json");
  auto loaded = load_configuration(dir / "c.json");
  EXPECT_EQ(loaded, c);
  EXPECT_FALSE(loaded.urls.for_page(PageType::Subsection));
  EXPECT_TRUE(read_all(dir / "c.json").find("\"schema_version\": 1") != std::string::npos);
}

TEST(Config, RelativePathsResolveAgainstFile) {
  auto dir = temp_dir("cfgrel");
  auto c = full_config();
  c.store_path = "data/x.db";
  c.driver.fixture_root = "forum";
  save_configuration(c, dir / "c.json");
  auto loaded = load_configuration(dir / "c.json");
  EXPECT_EQ(loaded.store_path, (dir / "data/x.db").string());
  EXPECT_EQ(loaded.driver.fixture_root, (dir / "forum").string());
}

TEST(Config, TamperedVersionIsSchemaMismatch) {
  auto doc = configuration_to_json(full_config(), false);
  doc["schema_version"] = 2;
  try {
    configuration_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaMismatch);
  }
  doc.erase("schema_version");
  EXPECT_THROW(configuration_from_json(doc), Error);
}

TEST(Config, SecretNeverInRedactedOutput) {
  auto c = full_config();
  auto dump = redacted_dump(c);
  EXPECT_EQ(dump.find("hunter2"), std::string::npos);
  EXPECT_NE(dump.find("analyst"), std::string::npos);
}

TEST(Config, InvalidFieldsRejected) {
  auto doc = configuration_to_json(full_config(), false);
  auto bad = doc;
  bad["wpm_range"] = {240, 180};
  EXPECT_THROW(configuration_from_json(bad), Error);
  bad = doc;
  bad["keyword_policy"]["blacklist"] = {"ok", ""};
  EXPECT_THROW(configuration_from_json(bad), Error);
  bad = doc;
  bad["schedule"]["days"]["monday"][0]["end"] = "16:00";
  EXPECT_THROW(configuration_from_json(bad), Error);
  bad = doc;
  bad["timezone"] = "Mars/Olympus";
  EXPECT_THROW(configuration_from_json(bad), Error);
}

// --- profile ---------------------------------------------------------------

TEST(Profile, RoundTrip) {
  TrainedProfile p;
  p.forum_id = "xss";
  p.created_at = parse_timestamp("2024-01-15T16:00:00Z").value();
  Locator user{XPathExpr::parse("//input[@autocomplete='username']"), Strategy::RobustAttribute, {}, {}};
  Locator threads{XPathExpr::parse("//*[@data-xf-init=\"preview-tooltip\"]"), Strategy::Manual, {}, {}};
  Locator subs{XPathExpr::parse("/html[1]/body[1]/div[2]/div/h3[1]/a[1]"), Strategy::AbsoluteCommon,
               {"/html[1]/body[1]/div[2]/div[3]/h3[1]/a[1]"}, {}};
  Locator date{XPathExpr::parse("//time[contains(@class,'u-dt')]"), Strategy::CommonClass, {}, "%b %d, %Y"};
  p.pages[PageType::Login].labels[LabelKind::UsernameField] = user;
  p.pages[PageType::Home].labels[LabelKind::SubsectionLink] = subs;
  p.pages[PageType::Section].labels[LabelKind::ThreadLink] = threads;
  p.pages[PageType::Section].script = "document.querySelector('#x').click();";
  p.pages[PageType::Thread].labels[LabelKind::PostDate] = date;

  auto dir = temp_dir("profile");
  save_profile(p, dir / "p.json");
  auto loaded = load_profile(dir / "p.json");
  EXPECT_EQ(loaded, p);
  EXPECT_EQ(loaded.locator(PageType::Section, LabelKind::ThreadLink)->expr.source(),
            "//*[@data-xf-init=\"preview-tooltip\"]");
  EXPECT_EQ(loaded.locator(PageType::Thread, LabelKind::PostContent), nullptr);

  auto text = read_all(dir / "p.json");
  for (auto field : {"\"forum_id\"", "\"pages\"", "\"labels\"", "\"expr\"", "\"strategy\"", "\"ignore\"",
                     "\"date_format\"", "\"script\""})
    EXPECT_NE(text.find(field), std::string::npos) << field;
}

TEST(Profile, LabelOnWrongPageRejected) {
  TrainedProfile p;
  p.forum_id = "f";
  auto doc = profile_to_json(p);
  doc["pages"] = {{{"page_type", "login"},
                   {"script", nullptr},
                   {"labels", {{{"label", "post_content"}, {"expr", "//div"}, {"strategy", "Manual"}}}}}};
  try {
    profile_from_json(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidLabelForPage);
  }
  doc["schema_version"] = 99;
  EXPECT_THROW(profile_from_json(doc), Error);
}

// --- keyword policy --------------------------------------------------------

TEST(Keywords, Examples) {
  KeywordPolicy black{KeywordPolicy::Mode::AllExceptBlacklist, {"GF", "nudes", "photos", "snapchat", "naked"}, {}};
  EXPECT_FALSE(should_open_thread("my GF photos", black));
  EXPECT_TRUE(should_open_thread("Selling GFX packs", black));
  KeywordPolicy white{KeywordPolicy::Mode::WhitelistOnly, {}, {"malware"}};
  EXPECT_TRUE(should_open_thread("Malware dropper source", white));
  EXPECT_FALSE(should_open_thread("Carding tutorial", white));
  KeywordPolicy open{};
  EXPECT_TRUE(should_open_thread("anything at all", open));
  EXPECT_FALSE(contains_keyword("add me on snapchatting", "snapchat"));
  EXPECT_TRUE(contains_keyword("add me on SNAPCHAT.", "snapchat"));
}

TEST(Keywords, MatchesRegexOracle) {
  // Oracle: ECMAScript regex with explicit non-word-character guards.
  std::mt19937 rng(7);
  const std::string alphabet = "abgfGF _.-snap1";
  const std::vector<std::string> keywords = {"gf", "snap", "a_b", "f1"};
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    int len = std::uniform_int_distribution<int>(0, 14)(rng);
    for (int k = 0; k < len; ++k) text += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    for (const auto& kw : keywords) {
      std::regex re("(^|[^A-Za-z0-9_])" + kw + "([^A-Za-z0-9_]|$)", std::regex::icase);
      EXPECT_EQ(contains_keyword(text, kw), std::regex_search(text, re)) << "'" << text << "' / " << kw;
    }
  }
}

// --- store -----------------------------------------------------------------

TEST(Store, AppendQueryAndDuplicates) {
  Store store(":memory:");
  std::vector<PostRecord> page = {sample_record(1, 0), sample_record(1, 1), sample_record(2, 0)};
  EXPECT_EQ(store.append_posts(page), 3u);
  EXPECT_EQ(store.append_posts(page), 0u);
  EXPECT_EQ(store.post_count(), 3u);
  auto got = store.query("http://xss.test/threads/100/");
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0], page[0]);
  EXPECT_EQ(got[2], page[2]);
  EXPECT_TRUE(store.query("http://xss.test/threads/999/").empty());
}

TEST(Store, VisitedSetPersistsAcrossRestart) {
  auto dir = temp_dir("visited");
  {
    Store store(dir / "s.db");
    EXPECT_FALSE(store.visited_check("http://f/t/1"));
    store.visited_mark("http://f/t/1");
    EXPECT_TRUE(store.visited_check("http://f/t/1"));
    store.visited_mark("http://f/t/1");
  }
  Store reopened(dir / "s.db");
  EXPECT_TRUE(reopened.visited_check("http://f/t/1"));
  EXPECT_FALSE(reopened.visited_check("http://f/t/2"));
}

TEST(Store, CommitPageTracksProgress) {
  Store store(":memory:");
  const std::string url = "http://xss.test/threads/100/";
  store.begin_thread({url, VisitStatus::InProgress, url, {}, 0, "Selling accounts", {"Market"}});
  std::vector<PostRecord> p1 = {sample_record(1, 0)};
  store.commit_page(url, p1, 1, "http://xss.test/threads/100/page-2");
  auto v = store.visited(url).value();
  EXPECT_EQ(v.pages_done, 1);
  EXPECT_EQ(v.next_url, "http://xss.test/threads/100/page-2");
  EXPECT_EQ(store.threads_with_status(VisitStatus::InProgress).size(), 1u);
  store.set_thread_status(url, VisitStatus::Done);
  EXPECT_TRUE(store.threads_with_status(VisitStatus::InProgress).empty());
  EXPECT_THROW(store.commit_page("http://never/begun", p1, 1, std::nullopt), Error);
}

TEST(Store, DiscardLeavesNoBytesOnDisk) {
  auto dir = temp_dir("discard");
  const std::string marker = "Zq9snapchatMarkerXv";
  const std::string url = "http://xss.test/threads/marker-thread-77/";
  {
    Store store(dir / "s.db");
    for (int i = 0; i < 40; ++i) {
      auto r = sample_record(1, i, "keep me " + std::to_string(i));
      r.thread_url = "http://xss.test/threads/other/";
      store.append_posts(std::span(&r, 1));
    }
    store.begin_thread({url, VisitStatus::InProgress, url, {}, 0, "title " + marker, {"Market"}});
    std::vector<PostRecord> recs;
    for (int i = 0; i < 20; ++i) {
      auto r = sample_record(1, i, std::string(200, 'x') + marker);
      r.thread_url = url;
      r.thread_title = "title " + marker;
      recs.push_back(r);
    }
    store.commit_page(url, recs, 1, url + "page-2");
    store.log_fetch({url, SysTime{}, "open", "ok"});
    store.log_fetch({url + "page-2", SysTime{}, "open", "ok"});
    std::vector<std::string> pages = {url, url + "page-2"};
    store.discard_thread(url, pages);
    EXPECT_TRUE(store.visited_check(url));
    EXPECT_EQ(store.visited(url)->status, VisitStatus::Discarded);
    EXPECT_TRUE(store.query(url).empty());
    EXPECT_EQ(store.post_count(), 40u);
    EXPECT_TRUE(store.fetch_log().empty());

    for (const auto& entry : fs::directory_iterator(dir)) {
      auto bytes = read_all(entry.path());
      EXPECT_EQ(bytes.find(marker), std::string::npos) << entry.path();
      EXPECT_EQ(bytes.find("marker-thread-77"), std::string::npos) << entry.path();
    }
  }
  Store reopened(dir / "s.db");
  EXPECT_TRUE(reopened.visited_check(url));
}

TEST(Store, ExportRoundTrip) {
  Store store(":memory:");
  std::ostringstream empty;
  store.export_jsonl(empty);
  EXPECT_TRUE(empty.str().empty());

  std::vector<PostRecord> recs = {sample_record(1, 0, "caf\xc3\xa9 \"quoted\"\nnewline"), sample_record(1, 1)};
  recs[1].author_registration_date.reset();
  recs[1].author_post_count.reset();
  store.append_posts(recs);
  std::ostringstream out;
  store.export_jsonl(out);
  std::istringstream in(out.str());
  std::string line;
  std::vector<PostRecord> back;
  while (std::getline(in, line)) back.push_back(record_from_json(nlohmann::json::parse(line)));
  EXPECT_EQ(back, recs);
}

TEST(Store, TicketsReplaceAndPreserveOrder) {
  Store store(":memory:");
  EXPECT_TRUE(store.tickets().pairs.empty());
  TicketBundle b{{{"cf-commitment-2.58", "abc"}, {"cf-tokens", "[1,2]"}}};
  store.save_tickets(b);
  EXPECT_EQ(store.tickets(), b);
  store.save_tickets({});
  EXPECT_TRUE(store.tickets().pairs.empty());
}

TEST(Tickets, ParseFormats) {
  TicketBundle expected{{{"cf-commitment-2.58", "abc"}, {"cf-tokens", "[1,2]"}}};
  EXPECT_EQ(parse_ticket_bundle("cf-commitment-2.58=abc\ncf-tokens=[1,2]\n"), expected);
  EXPECT_EQ(parse_ticket_bundle(R"([["cf-commitment-2.58","abc"],["cf-tokens",[1,2]]])"), expected);
  auto obj = parse_ticket_bundle(R"({"cf-commitment-2.58":"abc","cf-tokens":"[1,2]"})");
  EXPECT_EQ(obj.pairs.size(), 2u);
  EXPECT_THROW(parse_ticket_bundle("no equals sign here"), Error);
  EXPECT_THROW(parse_ticket_bundle("=value"), Error);
  EXPECT_TRUE(parse_ticket_bundle("").pairs.empty());
}

TEST(Timefmt, RoundTripAndDates) {
  auto t = parse_timestamp("2024-01-15T16:00:00.123456789Z").value();
  EXPECT_EQ(parse_timestamp(format_timestamp(t)), t);
  EXPECT_EQ(format_timestamp(parse_timestamp("2024-01-15T16:00:00Z").value()), "2024-01-15T16:00:00Z");
  EXPECT_EQ(compact_timestamp(t), "20240115T160000Z");
  EXPECT_EQ(parse_date("Jan 15, 2024", "%b %d, %Y"), parse_timestamp("2024-01-15T00:00:00Z"));
  EXPECT_FALSE(parse_date("15 Jan 2024", "%b %d, %Y"));
  EXPECT_FALSE(parse_date("Jan 15, 2024 extra", "%b %d, %Y"));
}

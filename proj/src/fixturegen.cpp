#include "forumcrawl/fixturegen.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "forumcrawl/error.hpp"

namespace forumcrawl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kBase = "http://forum.test";
constexpr const char* kWords[] = {"exploit", "loader", "crypter", "panel", "build",  "update", "source", "config",
                                  "proxy",   "socks",  "vendor",  "escrow", "review", "thanks", "works",  "tested",
                                  "stub",    "bypass", "module",  "release", "patch", "mirror", "guide",  "setup"};
constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::StoreError, "cannot write " + p.string());
  out << text;
}

std::string page_shell(const std::string& title, const std::string& body) {
  return "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" + title +
         "</title></head><body>\n<div class=\"p-nav\"><a class=\"p-nav-home\" href=\"/\">Home</a></div>\n" + body +
         "\n</body></html>\n";
}

std::string date_text(std::mt19937_64& rng, int year_lo, int year_hi) {
  int y = std::uniform_int_distribution<int>(year_lo, year_hi)(rng);
  int m = std::uniform_int_distribution<int>(0, 11)(rng);
  int d = std::uniform_int_distribution<int>(1, 28)(rng);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s %02d, %d", kMonths[m], d, y);
  return buf;
}

std::string sentence(std::mt19937_64& rng, int words) {
  std::string s;
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kWords) - 1);
  for (int i = 0; i < words; ++i) s += (i ? " " : "") + std::string(kWords[pick(rng)]);
  return s;
}

Locator manual(const std::string& expr, std::optional<std::string> date_format = std::nullopt) {
  return Locator{XPathExpr::parse(expr), Strategy::Manual, {}, std::move(date_format)};
}

struct Listing {
  std::string path;  // e.g. /forums/s1-2/
  std::vector<std::string> section_path;
};

}  // namespace

json fixture_gen_options_to_json(const FixtureGenOptions& o) {
  return {{"sections", o.sections},
          {"subsections", o.subsections},
          {"threads", o.threads},
          {"pages", o.pages},
          {"posts", o.posts},
          {"threads_per_listing_page", o.threads_per_listing_page},
          {"seed", o.seed},
          {"last_page_landing", o.last_page_landing},
          {"hidden_content", o.hidden_content},
          {"ticket_gate", o.ticket_gate},
          {"randomized_ids", o.randomized_ids},
          {"mutate_thread_links", o.mutate_thread_links},
          {"blacklisted_titles", o.blacklisted_titles},
          {"blacklisted_content", o.blacklisted_content},
          {"blacklist", o.blacklist}};
}

FixtureGenOptions fixture_gen_options_from_json(const json& doc) {
  FixtureGenOptions o;
  try {
    o.sections = doc.value("sections", o.sections);
    o.subsections = doc.value("subsections", o.subsections);
    o.threads = doc.value("threads", o.threads);
    o.pages = doc.value("pages", o.pages);
    o.posts = doc.value("posts", o.posts);
    o.threads_per_listing_page = doc.value("threads_per_listing_page", o.threads_per_listing_page);
    o.seed = doc.value("seed", o.seed);
    o.last_page_landing = doc.value("last_page_landing", o.last_page_landing);
    o.hidden_content = doc.value("hidden_content", o.hidden_content);
    o.ticket_gate = doc.value("ticket_gate", o.ticket_gate);
    o.randomized_ids = doc.value("randomized_ids", o.randomized_ids);
    o.mutate_thread_links = doc.value("mutate_thread_links", o.mutate_thread_links);
    o.blacklisted_titles = doc.value("blacklisted_titles", o.blacklisted_titles);
    o.blacklisted_content = doc.value("blacklisted_content", o.blacklisted_content);
    o.blacklist = doc.value("blacklist", o.blacklist);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("fixture options: ") + e.what());
  }
  return o;
}

GeneratedForum generate_fixture_forum(const fs::path& root, const FixtureGenOptions& o) {
  if (o.sections < 1 || o.subsections < 0 || o.threads < 1 || o.pages < 1 || o.posts < 1 ||
      o.threads_per_listing_page < 1)
    throw Error(ErrorCode::InvalidDocument, "fixture counts must be positive");
  if ((o.blacklisted_titles || o.blacklisted_content) && o.blacklist.empty())
    throw Error(ErrorCode::InvalidDocument, "blacklisted threads need at least one keyword");
  if (o.blacklisted_content && o.pages < 2)
    throw Error(ErrorCode::InvalidDocument, "mid-thread censoring needs at least 2 pages");

  fs::remove_all(root);
  fs::create_directories(root);
  std::mt19937_64 rng(o.seed);
  GeneratedForum out;
  out.root = root;

  // Login and home.
  write(root / "login/index.html",
        page_shell("Log in", "<form action=\"/login/login\" method=\"post\" class=\"block\">"
                             "<input type=\"text\" name=\"login\" autocomplete=\"username\">"
                             "<input type=\"password\" name=\"password\" autocomplete=\"current-password\">"
                             "<button type=\"submit\" class=\"button--primary\">Log in</button></form>"));
  std::string home = "<div class=\"node-list\">";
  std::vector<Listing> listings;
  for (int s = 1; s <= o.sections; ++s) {
    std::string name = "Section " + std::to_string(s);
    std::string path = "/forums/s" + std::to_string(s) + "/";
    home += "<div class=\"node\"><h3 class=\"node-title\"><a href=\"" + path + "\">" + name + "</a></h3></div>";
    if (o.subsections == 0) {
      listings.push_back({path, {name}});
      continue;
    }
    std::string body = "<h1 class=\"p-title-value\">" + name + "</h1><ol class=\"subforums\">";
    for (int j = 1; j <= o.subsections; ++j) {
      std::string sub = "Sub " + std::to_string(s) + "." + std::to_string(j);
      std::string sub_path = "/forums/s" + std::to_string(s) + "-" + std::to_string(j) + "/";
      body += "<li><a class=\"subNodeLink\" href=\"" + sub_path + "\">" + sub + "</a></li>";
      listings.push_back({sub_path, {name, sub}});
    }
    write(root / ("forums/s" + std::to_string(s) + "/index.html"), page_shell(name, body + "</ol>"));
  }
  write(root / "index.html", page_shell("Forum home", home + "</div>"));

  // Pick censored threads.
  const int total_threads = static_cast<int>(listings.size()) * o.threads;
  if (o.blacklisted_titles + o.blacklisted_content > total_threads)
    throw Error(ErrorCode::InvalidDocument, "more blacklisted threads than threads");
  std::vector<int> ids(static_cast<std::size_t>(total_threads));
  for (int i = 0; i < total_threads; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::set<int> bad_title(ids.begin(), ids.begin() + o.blacklisted_titles);
  std::set<int> bad_content(ids.begin() + o.blacklisted_titles, ids.begin() + o.blacklisted_titles + o.blacklisted_content);

  json thread_urls = json::array(), censored_title = json::array(), censored_content = json::array();
  std::size_t kept_threads = 0, kept_posts = 0;
  int thread_id = 0;
  const std::string title_class = "structItem-title";
  for (const auto& listing : listings) {
    int listing_pages = (o.threads + o.threads_per_listing_page - 1) / o.threads_per_listing_page;
    std::vector<std::string> rows;
    for (int t = 0; t < o.threads; ++t) {
      int k = ++thread_id;
      std::string tpath = "/threads/t" + std::to_string(k) + "/";
      std::string title = "Thread " + std::to_string(k) + " " + sentence(rng, 3);
      if (bad_title.count(k)) {
        title = "my " + o.blacklist[static_cast<std::size_t>(k) % o.blacklist.size()] + " " + sentence(rng, 2);
        censored_title.push_back(kBase + tpath);
      } else if (bad_content.count(k)) {
        censored_content.push_back(kBase + tpath);
      } else {
        ++kept_threads;
        kept_posts += static_cast<std::size_t>(o.pages * o.posts);
      }
      thread_urls.push_back(kBase + tpath);
      std::string entry = o.last_page_landing && o.pages > 1 ? tpath + "page-" + std::to_string(o.pages) : tpath;
      rows.push_back("<div class=\"structItem structItem--thread\"><div class=\"structItem-cell\"><div class=\"" +
                     title_class + "\"><a href=\"" + entry + "\" data-xf-init=\"preview-tooltip\">" + title +
                     "</a></div></div></div>");

      // Thread pages.
      const std::string crumbs = [&] {
        std::string c = "<ul class=\"breadcrumbs\">";
        for (const auto& s : listing.section_path) c += "<li><a href=\"" + listing.path + "\">" + s + "</a></li>";
        return c + "</ul>";
      }();
      for (int p = 1; p <= o.pages; ++p) {
        std::string body = crumbs + "<h1 class=\"p-title-value\">" + title + "</h1><div class=\"block-body\">";
        for (int n = 0; n < o.posts; ++n) {
          std::string author = "user" + std::to_string((k * 7 + p * 3 + n) % 97);
          std::string text = "t" + std::to_string(k) + "p" + std::to_string(p) + "n" + std::to_string(n) + " " +
                             sentence(rng, std::uniform_int_distribution<int>(8, 40)(rng));
          if (bad_content.count(k) && p == 2 && n == o.posts / 2)
            text += " add me on " + o.blacklist[static_cast<std::size_t>(k) % o.blacklist.size()];
          std::string content = "<div class=\"bbWrapper\">" + text + "</div>";
          if (o.hidden_content)
            content = "<script type=\"text/x-fixture-hidden\" data-requires=\"like reply\">" + content + "</script>";
          std::string id = o.randomized_ids ? " id=\"{{XF_UID}}\"" : "";
          body += "<article class=\"message\"" + id + "><div class=\"message-user\"><a class=\"username\">" + author +
                  "</a><dl class=\"pairs\"><dt>Messages</dt><dd class=\"count\">" +
                  std::to_string((k * 13 + n) % 2000) + "</dd></dl><dl class=\"reg\"><dt>Joined</dt><dd>" +
                  date_text(rng, 2015, 2019) + "</dd></dl></div><div class=\"message-main\">"
                  "<time data-original-title=\"Original post time\">" + date_text(rng, 2020, 2023) + "</time>" +
                  content + "</div></article>";
        }
        body += "</div>";
        if (o.hidden_content)
          body += "<div class=\"actions\"><button data-fixture-action=\"like\">Like</button>"
                  "<button data-fixture-action=\"reply\">Reply</button></div>";
        body += "<div class=\"pageNav\">";
        if (o.last_page_landing && p > 1) body += "<a class=\"pageNav-first\" href=\"" + tpath + "\">1</a>";
        if (p > 1)
          body += "<a class=\"pageNav-jump--prev\" href=\"" + tpath + (p == 2 ? "" : "page-" + std::to_string(p - 1)) +
                  "\">Prev</a>";
        if (p < o.pages) body += "<a class=\"pageNav-jump--next\" href=\"" + tpath + "page-" + std::to_string(p + 1) + "\">Next</a>";
        body += "</div>";
        auto file = p == 1 ? root / ("threads/t" + std::to_string(k) + "/index.html")
                           : root / ("threads/t" + std::to_string(k) + "/page-" + std::to_string(p) + ".html");
        write(file, page_shell(title, body));
      }
    }
    for (int lp = 1; lp <= listing_pages; ++lp) {
      std::string body = "<h1 class=\"p-title-value\">" + listing.section_path.back() + "</h1><div class=\"structItemContainer\">";
      for (int r = (lp - 1) * o.threads_per_listing_page; r < std::min(o.threads, lp * o.threads_per_listing_page); ++r)
        body += rows[static_cast<std::size_t>(r)];
      body += "</div><div class=\"pageNav\">";
      if (lp < listing_pages)
        body += "<a class=\"pageNav-jump--next\" href=\"" + listing.path + "page-" + std::to_string(lp + 1) + "\">Next</a>";
      body += "</div>";
      auto rel = listing.path.substr(1);
      auto file = lp == 1 ? root / (rel + "index.html") : root / (rel + "page-" + std::to_string(lp) + ".html");
      write(file, page_shell(listing.section_path.back(), body));
    }
  }

  // Manifest.
  auto& m = out.manifest;
  m.base_url = kBase;
  m.login = FixtureLogin{"/login/", "/login/login", "analyst", "correct horse", "/", "login", "password"};
  using K = FixtureBehavior::Kind;
  if (o.ticket_gate) m.behaviors.push_back({K::TicketGate, "/*", 1, ErrorCode::NetworkError, {"cf-commitment-2.58", "cf-tokens"}, {}, 0});
  if (o.randomized_ids) m.behaviors.push_back({K::RerandomizeIds, "/threads/*", 1, ErrorCode::NetworkError, {}, {}, 0});
  if (o.mutate_thread_links)
    m.behaviors.push_back({K::MutateAfterVisit, "/forums/*", 1, ErrorCode::NetworkError, {},
                           {{"<div class=\"structItem-title\">", "<h3 class=\"structItem-heading\">"},
                            {"</a></div></div></div>", "</a></h3></div></div>"}}, 0});
  m.info = {{"generator", fixture_gen_options_to_json(o)}};
  write(root / "manifest.json", manifest_to_json(m).dump(2));

  // Reference profile.
  auto& prof = out.profile;
  prof.forum_id = "synthetic";
  prof.created_at = SysTime{} + std::chrono::seconds(1700000000);
  auto& login = prof.pages[PageType::Login].labels;
  login[LabelKind::UsernameField] = manual("//input[@name='login']");
  login[LabelKind::PasswordField] = manual("//input[@name='password']");
  login[LabelKind::LoginButton] = manual("//button[@type='submit']");
  prof.pages[PageType::Home].labels[LabelKind::SectionLink] = manual("//h3[@class='node-title']/a");
  const std::string thread_link = o.mutate_thread_links
                                      ? "//div[@class='structItem-title']/a | //h3[@class='structItem-heading']/a"
                                      : "//div[@class='structItem-title']/a";
  for (auto type : {PageType::Section, PageType::Subsection}) {
    if (type == PageType::Subsection && o.subsections == 0) continue;
    auto& l = prof.pages[type].labels;
    if (type == PageType::Section && o.subsections > 0) l[LabelKind::SubsectionLink] = manual("//a[@class='subNodeLink']");
    l[LabelKind::ThreadLink] = manual(thread_link);
    l[LabelKind::NextPage] = manual("//a[@class='pageNav-jump--next']");
  }
  auto& th = prof.pages[PageType::Thread];
  th.labels[LabelKind::ThreadTitle] = manual("//h1[@class='p-title-value']");
  th.labels[LabelKind::ThreadSection] = manual("//ul[@class='breadcrumbs']/li/a");
  th.labels[LabelKind::PostAuthor] = manual("//a[@class='username']");
  th.labels[LabelKind::AuthorPostCount] = manual("//dd[@class='count']");
  th.labels[LabelKind::AuthorRegistrationDate] = manual("//dl[@class='reg']/dd", "%b %d, %Y");
  th.labels[LabelKind::PostDate] = manual("//time", "%b %d, %Y");
  th.labels[LabelKind::PostContent] = manual("//div[@class='bbWrapper']");
  th.labels[LabelKind::NextPage] = manual("//a[@class='pageNav-jump--next']");
  if (o.last_page_landing) th.labels[LabelKind::FirstPageButton] = manual("//a[@class='pageNav-first']");
  if (o.hidden_content) {
    std::string script = "(async () => {\n";
    for (const char* action : {"like", "reply"})
      script += click_script_template(std::string("//button[@data-fixture-action='") + action + "']") +
                "\nawait new Promise(r => setTimeout(r, 20));\n";
    th.script = script + "})();\n";
  }
  save_profile(prof, root / "profile.json");

  // Configuration.
  auto& c = out.config;
  c.forum_id = prof.forum_id;
  c.urls.login = std::string(kBase) + "/login/";
  c.urls.home = std::string(kBase) + "/";
  c.urls.section = std::string(kBase) + "/forums/s1/";
  if (o.subsections > 0) c.urls.subsection = std::string(kBase) + "/forums/s1-1/";
  c.urls.thread = std::string(kBase) + "/threads/t1/";
  c.credentials = {m.login->username, m.login->password};
  c.keyword_policy.blacklist = o.blacklist;
  c.needs_cf_tickets = o.ticket_gate;
  c.driver.kind = DriverKind::Fixture;
  c.driver.fixture_root = root.string();
  c.store_path = (root / "forumcrawl.db").string();
  c.profile_path = (root / "profile.json").string();
  c.archive_dir = (root / "archive").string();
  // Keep the file portable: paths relative to the config's directory.
  auto portable = c;
  portable.driver.fixture_root = ".";
  portable.store_path = "forumcrawl.db";
  portable.profile_path = "profile.json";
  portable.archive_dir = "archive";
  save_configuration(portable, root / "config.json");

  out.expected = {{"threads", total_threads},
                  {"kept_threads", kept_threads},
                  {"posts", kept_posts},
                  {"pages_per_thread", o.pages},
                  {"posts_per_page", o.posts},
                  {"thread_urls", thread_urls},
                  {"censored_title_urls", censored_title},
                  {"censored_content_urls", censored_content}};
  write(root / "expected.json", out.expected.dump(2));
  return out;
}

}  // namespace forumcrawl

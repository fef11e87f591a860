#include "forumcrawl/crawl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "forumcrawl/error.hpp"
#include "forumcrawl/timefmt.hpp"
#include "forumcrawl/url.hpp"

namespace forumcrawl {

namespace {

constexpr LabelKind kPerPostLabels[] = {LabelKind::PostAuthor, LabelKind::AuthorPostCount, LabelKind::AuthorPopularity,
                                        LabelKind::AuthorRegistrationDate, LabelKind::PostDate};

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : text) {
    bool space = std::isspace(c) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

ParsedDate parse_date_field(const std::string& raw, const std::optional<std::string>& format) {
  ParsedDate d;
  d.raw = raw;
  if (format) d.value = parse_date(raw, *format);
  d.parse_ok = d.value.has_value();
  return d;
}

std::string path_key(LabelKind label) { return std::string(to_string(label)); }

bool retryable(ErrorCode code) {
  return code == ErrorCode::NetworkError || code == ErrorCode::Timeout || code == ErrorCode::FetchFailed;
}

std::optional<std::string> href_of(const NodeRef& node) {
  if (auto h = node.attribute("href")) return std::string(*h);
  for (const auto& child : node.element_children())
    if (auto h = href_of(child)) return h;
  return std::nullopt;
}

}  // namespace

std::optional<long long> parse_count(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) return std::nullopt;
  std::string digits;
  std::string fraction;
  bool in_fraction = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (in_fraction ? fraction : digits) += c;
    } else if (c == ',' && !in_fraction) {
      continue;
    } else if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  while (i < text.size() && text[i] == ' ') ++i;
  long long multiplier = 1;
  if (i < text.size()) {
    char s = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    if (s == 'k') multiplier = 1000;
    if (s == 'm') multiplier = 1000000;
  }
  if (multiplier == 1) return std::stoll(digits);
  double value = std::stod(digits + "." + (fraction.empty() ? "0" : fraction));
  return static_cast<long long>(value * static_cast<double>(multiplier) + 0.5);
}

CensorVerdict censor_thread_posts(const std::vector<PostRecord>& posts, const KeywordPolicy& policy) {
  if (policy.mode != KeywordPolicy::Mode::AllExceptBlacklist || policy.blacklist.empty()) return CensorVerdict::Keep;
  auto hit = [&](std::string_view text) { return find_keyword(text, policy.blacklist).has_value(); };
  for (const auto& p : posts) {
    if (hit(p.thread_title) || hit(p.content_text) || hit(p.content_html) || hit(p.author_name)) return CensorVerdict::DiscardThread;
    if (p.author_popularity && hit(*p.author_popularity)) return CensorVerdict::DiscardThread;
    if (p.post_date && hit(p.post_date->raw)) return CensorVerdict::DiscardThread;
    if (p.author_registration_date && hit(p.author_registration_date->raw)) return CensorVerdict::DiscardThread;
    for (const auto& s : p.section_path)
      if (hit(s)) return CensorVerdict::DiscardThread;
  }
  return CensorVerdict::Keep;
}

Extraction extract_posts(const DomSnapshot& snapshot, const PageProfile& thread_profile, const PostContext& context) {
  const Locator* spine_locator = thread_profile.find(LabelKind::PostContent);
  if (!spine_locator) throw Error(ErrorCode::NoSpine, "PostContent is not trained");
  auto matched = resolve(snapshot, *spine_locator);
  // Nested matches (quotes inside a post) belong to their outer post.
  std::vector<NodeRef> spine;
  for (const auto& n : matched)
    if (std::none_of(matched.begin(), matched.end(), [&](const NodeRef& o) { return o != n && o.contains(n); }))
      spine.push_back(n);
  if (spine.empty()) throw Error(ErrorCode::NoSpine, "PostContent matches nothing on " + snapshot.source_url());

  std::map<std::uint32_t, int> spine_below;
  for (const auto& s : spine)
    for (auto a = s.parent(); a.valid(); a = a.parent()) ++spine_below[a.order()];
  std::vector<NodeRef> containers;
  for (const auto& s : spine) {
    NodeRef c = s;
    for (auto p = c.parent(); p.valid() && p.is_element() && spine_below[p.order()] == 1; p = p.parent()) c = p;
    containers.push_back(c);
  }

  Extraction out;
  std::vector<std::map<LabelKind, NodeRef>> fields(spine.size());
  for (auto label : kPerPostLabels) {
    const Locator* loc = thread_profile.find(label);
    if (!loc) continue;
    std::size_t orphans = 0;
    for (const auto& n : resolve(snapshot, *loc)) {
      auto it = std::find_if(containers.begin(), containers.end(), [&](const NodeRef& c) { return c.contains(n); });
      if (it == containers.end()) {
        ++orphans;
        continue;
      }
      fields[static_cast<std::size_t>(it - containers.begin())].emplace(label, n);
    }
    if (orphans)
      out.anomalies.push_back(std::to_string(orphans) + " " + path_key(label) + " node(s) outside any post on " +
                              snapshot.source_url());
  }

  for (std::size_t i = 0; i < spine.size(); ++i) {
    PostRecord r;
    r.forum_id = context.forum_id;
    r.section_path = context.section_path;
    r.thread_title = context.thread_title;
    r.thread_url = context.thread_url;
    r.page_number = context.page_number;
    r.ordinal = static_cast<int>(i);
    r.retrieved_at = context.retrieved_at;
    r.content_text = text_content(spine[i]).text;
    r.content_html = outer_html(spine[i]);
    auto text_of = [&](LabelKind label) -> std::optional<std::string> {
      auto it = fields[i].find(label);
      if (it == fields[i].end()) return std::nullopt;
      return text_content(it->second).text;
    };
    auto format_of = [&](LabelKind label) { return thread_profile.find(label)->date_format; };
    if (auto t = text_of(LabelKind::PostAuthor)) r.author_name = *t;
    if (auto t = text_of(LabelKind::AuthorPostCount)) r.author_post_count = parse_count(*t);
    if (auto t = text_of(LabelKind::AuthorPopularity)) r.author_popularity = *t;
    if (auto t = text_of(LabelKind::AuthorRegistrationDate))
      r.author_registration_date = parse_date_field(*t, format_of(LabelKind::AuthorRegistrationDate));
    if (auto t = text_of(LabelKind::PostDate)) r.post_date = parse_date_field(*t, format_of(LabelKind::PostDate));
    out.posts.push_back(std::move(r));
  }
  return out;
}

nlohmann::json summary_to_json(const CrawlSummary& s) {
  return {{"threads", s.threads},       {"posts", s.posts},           {"discarded", s.discarded},
          {"skipped", s.skipped},       {"failed", s.failed},         {"thread_order", s.thread_order},
          {"anomalies", s.anomalies},   {"status", to_string(s.status)},
          {"completed", s.completed}};
}

Crawler::Crawler(TrainedProfile profile, CrawlConfiguration config, FetchAdapter& adapter, Store& store, Clock& clock,
                 CommandChannel& commands, CrawlOptions options)
    : profile_(std::move(profile)),
      config_(std::move(config)),
      adapter_(adapter),
      store_(store),
      clock_(clock),
      commands_(commands),
      options_(std::move(options)),
      rng_(options_.seed) {}

CrawlSummary Crawler::progress() const {
  std::lock_guard lock(summary_mu_);
  auto copy = summary_;
  copy.status = status_.load();
  return copy;
}

void Crawler::note(std::string anomaly) {
  std::lock_guard lock(summary_mu_);
  summary_.anomalies.push_back(std::move(anomaly));
}

void Crawler::flush_log() {
  for (const auto& e : adapter_.drain_log()) store_.log_fetch(e);
}

bool Crawler::observe_commands() {
  bool cancel = false;
  auto apply = [&](Command c) {
    auto t = handle_command(status_.load(), c);
    status_ = t.next;
    cancel = cancel || t.cancel_wait;
    if (t.next == RunStatus::Terminated) throw Stop{};
  };
  while (auto c = commands_.try_pop()) apply(*c);
  while (status_.load() == RunStatus::Paused) apply(commands_.wait_pop());
  return cancel;
}

void Crawler::wait_until(SysTime deadline) {
  while (!observe_commands() && clock_.now() < deadline) clock_.sleep_until(deadline, commands_);
}

void Crawler::wait_for(Seconds delay) {
  wait_until(clock_.now() + std::chrono::duration_cast<SysTime::duration>(delay));
}

void Crawler::await_run_window() {
  const auto& schedule = config_.schedule;
  if (schedule.always_on()) return;
  while (true) {
    auto now = clock_.now();
    if (window_override_until_ && now < *window_override_until_) return;
    auto day = local_date(schedule.timezone, now);
    if (span_day_ != day) {
      auto day_seed = options_.seed * 1000003u + static_cast<std::uint64_t>(day.year * 10000 + day.month * 100 + day.day);
      spans_ = compile_schedule(schedule, day, day_seed);
      span_day_ = day;
    }
    auto action = next_action(spans_, now);
    if (std::holds_alternative<RunUntil>(action)) return;
    SysTime until = std::holds_alternative<PauseUntil>(action) ? std::get<PauseUntil>(action).until
                                                              : start_of_next_day(schedule.timezone, day);
    while (clock_.now() < until) {
      if (observe_commands()) {
        // "resume" skips the rest of this break.
        window_override_until_ = until;
        return;
      }
      clock_.sleep_until(until, commands_);
    }
  }
}

PageHandle Crawler::settle(PageHandle handle, PageType type) {
  handle = await_captcha(adapter_, handle, options_.prompt);
  if (const auto* page = profile_.page(type); page && page->script && !page->script->empty())
    handle = adapter_.execute_script(*page->script);
  return handle;
}

PageHandle Crawler::fetch(const std::string& url, PageType type) {
  std::string last;
  for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
    await_run_window();
    observe_commands();
    try {
      auto handle = settle(adapter_.open(url), type);
      flush_log();
      return handle;
    } catch (const Error& e) {
      flush_log();
      if (!retryable(e.code())) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::FetchFailed, url + " failed after " + std::to_string(kRetryBudget) + " attempts (" + last + ")");
}

PageHandle Crawler::follow(const Locator& locator, const PageHandle& from, PageType type) {
  auto nodes = resolve(from.snapshot, locator);
  if (nodes.empty()) throw Error(ErrorCode::NotFound, "no match for " + locator.expr.source() + " on " + from.current_url);
  if (auto href = href_of(nodes.front())) return fetch(resolve_url(from.current_url, *href), type);
  // No link target: go back to the page if needed and click.
  std::string last;
  for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
    await_run_window();
    observe_commands();
    try {
      auto here = adapter_.current();
      if (!here || here->current_url != from.current_url) settle(adapter_.open(from.current_url), type);
      auto handle = settle(adapter_.click(locator), type);
      flush_log();
      return handle;
    } catch (const Error& e) {
      flush_log();
      if (!retryable(e.code())) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::FetchFailed, "click on " + locator.expr.source() + " failed (" + last + ")");
}

std::vector<Crawler::Link> Crawler::links(const PageHandle& page, const Locator& locator) const {
  std::vector<Link> out;
  for (const auto& n : resolve(page.snapshot, locator)) {
    auto href = href_of(n);
    if (!href) continue;
    out.push_back({text_content(n).text, resolve_url(page.current_url, *href)});
  }
  return out;
}

void Crawler::archive(const PageHandle& page, std::vector<std::filesystem::path>* written) {
  if (config_.archive_dir.empty()) return;
  const auto& raw = page.snapshot.raw_bytes();
  if (config_.keyword_policy.mode == KeywordPolicy::Mode::AllExceptBlacklist &&
      find_keyword(raw, config_.keyword_policy.blacklist)) {
    note("page not archived (blacklisted text): " + fnv1a_hex(page.current_url));
    return;
  }
  auto dir = std::filesystem::path(config_.archive_dir) / config_.forum_id;
  std::filesystem::create_directories(dir);
  auto file = dir / (compact_timestamp(clock_.now()) + "_" + fnv1a_hex(page.current_url) + ".html");
  std::ofstream(file, std::ios::binary) << raw;
  if (written) written->push_back(file);
}

void Crawler::prepare_tickets() {
  if (!config_.needs_cf_tickets) return;
  auto bundle = store_.tickets();
  if (bundle.pairs.empty() && options_.prompt) {
    bundle = parse_ticket_bundle(options_.prompt(PromptKind::Tickets, "Paste the ticket bundle for " + config_.forum_id));
    store_.save_tickets(bundle);
  }
  if (!bundle.pairs.empty()) adapter_.inject_tickets(bundle);
  flush_log();
}

ThreadRecord Crawler::traverse_thread(const std::string& entry_url, const std::string& listing_title,
                                      const std::vector<std::string>& section_path) {
  const auto* thread_profile = profile_.page(PageType::Thread);
  static const PageProfile kEmpty;
  const PageProfile& tp = thread_profile ? *thread_profile : kEmpty;
  const auto& policy = config_.keyword_policy;

  ThreadRecord rec;
  rec.url = canonical_thread_url(entry_url);
  rec.title = listing_title;
  rec.section_path = section_path;
  std::vector<std::string> page_urls;
  std::vector<std::filesystem::path> archived;

  auto existing = store_.visited(rec.url);
  PageHandle page;
  int page_no = 1;
  if (existing && existing->status == VisitStatus::InProgress && existing->pages_done > 0) {
    rec.title = existing->title;
    rec.section_path = existing->section_path;
    if (!existing->next_url) {
      store_.set_thread_status(rec.url, VisitStatus::Done);
      rec.status = VisitStatus::Done;
      return rec;
    }
    page_no = existing->pages_done + 1;
    page_urls.push_back(*existing->next_url);
    page = fetch(*existing->next_url, PageType::Thread);
  } else {
    store_.begin_thread({rec.url, VisitStatus::InProgress, entry_url, std::nullopt, 0, rec.title, rec.section_path});
    page_urls.push_back(entry_url);
    page = fetch(entry_url, PageType::Thread);
    if (const auto* first = tp.find(LabelKind::FirstPageButton); first && !resolve(page.snapshot, *first).empty()) {
      wait_for(navigation_delay(rng_));
      page = follow(*first, page, PageType::Thread);
      page_urls.push_back(page.current_url);
    }
  }

  auto discard = [&] {
    flush_log();
    std::set<std::string> urls(page_urls.begin(), page_urls.end());
    for (const auto& e : store_.fetch_log())
      if (canonical_thread_url(e.url) == rec.url) urls.insert(e.url);
    std::vector<std::string> all(urls.begin(), urls.end());
    store_.discard_thread(rec.url, all);
    for (const auto& f : archived) std::filesystem::remove(f);
    if (!config_.archive_dir.empty()) {
      auto dir = std::filesystem::path(config_.archive_dir) / config_.forum_id;
      std::set<std::string> suffixes;
      for (const auto& u : all) suffixes.insert("_" + fnv1a_hex(u) + ".html");
      if (std::filesystem::is_directory(dir))
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
          auto name = entry.path().filename().string();
          for (const auto& s : suffixes)
            if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0)
              std::filesystem::remove(entry.path());
        }
    }
    std::lock_guard lock(summary_mu_);
    summary_.posts -= rec.posts;
    ++summary_.discarded;
    rec.status = VisitStatus::Discarded;
    rec.pages.clear();
    rec.posts = 0;
  };

  while (true) {
    if (const auto* l = tp.find(LabelKind::ThreadTitle))
      if (auto nodes = resolve(page.snapshot, *l); !nodes.empty()) rec.title = text_content(nodes.front()).text;
    if (const auto* l = tp.find(LabelKind::ThreadSection)) {
      std::vector<std::string> crumbs;
      for (const auto& n : resolve(page.snapshot, *l)) crumbs.push_back(text_content(n).text);
      if (!crumbs.empty()) rec.section_path = crumbs;
    }
    if (!should_open_thread(rec.title, policy) && policy.mode == KeywordPolicy::Mode::AllExceptBlacklist) {
      discard();
      return rec;
    }

    PostContext ctx{profile_.forum_id, rec.section_path, rec.title, rec.url, page_no, clock_.now()};
    Extraction ex;
    try {
      ex = extract_posts(page.snapshot, tp, ctx);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoSpine) throw;
      note(std::string(to_string(ErrorCode::ExtractionEmpty)) + ": " + e.message());
    }
    for (auto& a : ex.anomalies) note(std::move(a));

    if (censor_thread_posts(ex.posts, policy) == CensorVerdict::DiscardThread) {
      discard();
      return rec;
    }

    std::optional<std::string> next_url;
    const Locator* next = tp.find(LabelKind::NextPage);
    std::vector<NodeRef> next_nodes;
    if (next) next_nodes = resolve(page.snapshot, *next);
    if (!next_nodes.empty())
      if (auto href = href_of(next_nodes.front())) next_url = resolve_url(page.current_url, *href);

    archive(page, &archived);
    store_.commit_page(rec.url, ex.posts, page_no, next_url);
    flush_log();
    rec.pages.push_back(page_no);
    rec.posts += ex.posts.size();
    {
      std::lock_guard lock(summary_mu_);
      summary_.posts += ex.posts.size();
    }

    std::size_t words = 0;
    for (const auto& p : ex.posts) words += word_count(p.content_text);
    if (ex.posts.empty()) words = text_content(page.snapshot.root()).word_count;
    wait_for(reading_delay(words, config_.wpm_range, rng_));

    if (next_nodes.empty()) break;
    page = follow(*next, page, PageType::Thread);
    page_urls.push_back(page.current_url);
    ++page_no;
  }
  store_.set_thread_status(rec.url, VisitStatus::Done);
  rec.status = VisitStatus::Done;
  std::lock_guard lock(summary_mu_);
  ++summary_.threads;
  return rec;
}

void Crawler::sweep_listing(const std::string& url, PageType type, const std::vector<std::string>& section_path) {
  if (listed_.count(url)) return;
  listed_[url] = true;
  const PageProfile* lp = profile_.page(type);
  if (!lp && type == PageType::Subsection) lp = profile_.page(PageType::Section);
  if (!lp) throw Error(ErrorCode::ProfileLocatorMissing, std::string(to_string(type)) + " page is not trained");

  wait_for(navigation_delay(rng_));
  PageHandle page;
  try {
    page = fetch(url, type);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FetchFailed) throw;
    note(e.what());
    return;
  }

  std::vector<Link> subsections;
  if (const auto* l = lp->find(LabelKind::SubsectionLink)) subsections = links(page, *l);

  std::set<std::string> seen;
  while (true) {
    archive(page, nullptr);
    std::vector<Link> threads;
    if (const auto* l = lp->find(LabelKind::ThreadLink)) threads = links(page, *l);
    std::shuffle(threads.begin(), threads.end(), rng_);
    for (const auto& t : threads) {
      auto canon = canonical_thread_url(t.url);
      if (!seen.insert(canon).second) continue;
      auto v = store_.visited(canon);
      if (v && v->status != VisitStatus::InProgress) continue;
      if (!v && !should_open_thread(t.text, config_.keyword_policy)) {
        std::lock_guard lock(summary_mu_);
        ++summary_.skipped;
        continue;
      }
      if (!v) {
        if (options_.max_threads && entered_ >= *options_.max_threads) throw Stop{};
        ++entered_;
        std::lock_guard lock(summary_mu_);
        summary_.thread_order.push_back(canon);
      }
      wait_for(navigation_delay(rng_));
      try {
        traverse_thread(t.url, t.text, section_path);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FetchFailed && e.code() != ErrorCode::NotFound) throw;
        flush_log();
        store_.set_thread_status(canon, VisitStatus::Failed);
        note(e.what());
        std::lock_guard lock(summary_mu_);
        ++summary_.failed;
      }
    }
    const Locator* next = lp->find(LabelKind::NextPage);
    if (!next || resolve(page.snapshot, *next).empty()) break;
    wait_for(navigation_delay(rng_));
    try {
      page = follow(*next, page, type);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FetchFailed && e.code() != ErrorCode::NotFound) throw;
      note(e.what());
      break;
    }
  }

  for (const auto& s : subsections) {
    auto path = section_path;
    path.push_back(s.text);
    sweep_listing(s.url, PageType::Subsection, path);
  }
}

CrawlSummary Crawler::run() {
  try {
    observe_commands();
    adapter_.set_images_enabled(config_.download_images);
    if (config_.mask_automation) adapter_.mask_automation();
    prepare_tickets();
    await_run_window();
    if (const auto* lp = profile_.page(PageType::Login); lp && !lp->labels.empty()) {
      login(adapter_, profile_, config_.urls.login, config_.credentials, options_.prompt);
      flush_log();
      wait_for(navigation_delay(rng_));
    }
    auto home = fetch(config_.urls.home, PageType::Home);
    std::vector<Link> sections, subsections;
    if (const auto* l = profile_.locator(PageType::Home, LabelKind::SectionLink)) sections = links(home, *l);
    if (const auto* l = profile_.locator(PageType::Home, LabelKind::SubsectionLink)) subsections = links(home, *l);
    if (sections.empty() && subsections.empty()) {
      note("no section links on the home page; crawling the configured section only");
      sections.push_back({"", config_.urls.section});
    }
    for (const auto& s : sections)
      sweep_listing(s.url, PageType::Section, s.text.empty() ? std::vector<std::string>{} : std::vector{s.text});
    for (const auto& s : subsections) sweep_listing(s.url, PageType::Subsection, {s.text});
    std::lock_guard lock(summary_mu_);
    summary_.completed = true;
  } catch (const Stop&) {
  } catch (...) {
    flush_log();
    status_ = RunStatus::Terminated;
    store_.checkpoint();
    adapter_.close();
    throw;
  }
  flush_log();
  status_ = RunStatus::Terminated;
  store_.checkpoint();
  adapter_.close();
  return progress();
}

CrawlSummary run_crawl(const TrainedProfile& profile, const CrawlConfiguration& config, FetchAdapter& adapter,
                       Store& store, Clock& clock, CommandChannel& commands, CrawlOptions options) {
  Crawler crawler(profile, config, adapter, store, clock, commands, std::move(options));
  return crawler.run();
}

}  // namespace forumcrawl

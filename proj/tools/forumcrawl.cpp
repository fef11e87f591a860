// forumcrawl command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "forumcrawl/api.hpp"
#include "forumcrawl/config.hpp"
#include "forumcrawl/crawl.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/fixturegen.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/store.hpp"
#include "forumcrawl/timefmt.hpp"
#include "forumcrawl/training.hpp"
#include "forumcrawl/webdriver.hpp"

using namespace forumcrawl;
using nlohmann::json;

namespace {

constexpr int kUsageExit = 2;
constexpr int kFailureExit = 1;
constexpr const char* kProxyEnv = "FORUMCRAWL_PROXY";

CrawlConfiguration load_config(const std::string& path) {
  auto config = load_configuration(path);
  // An empty override clears the configured proxy.
  if (const char* proxy = std::getenv(kProxyEnv)) {
    if (*proxy)
      config.proxy = proxy;
    else
      config.proxy.reset();
  }
  return config;
}

std::unique_ptr<FetchAdapter> make_adapter(const CrawlConfiguration& config, std::function<SysTime()> now) {
  auto timeout = std::chrono::milliseconds(std::int64_t{config.load_timeout_s} * 1000);
  if (config.driver.kind == DriverKind::Fixture) {
    FixtureOptions o;
    o.load_timeout = timeout;
    o.images_enabled = config.download_images;
    o.now = std::move(now);
    return std::make_unique<FixtureAdapter>(std::make_shared<FixtureSite>(config.driver.fixture_root), o);
  }
  WebDriverOptions o;
  o.endpoint = config.driver.webdriver_url;
  o.headless = config.driver.headless;
  o.proxy = config.proxy;
  o.images_enabled = config.download_images;
  o.load_timeout = timeout;
  o.now = std::move(now);
  return std::make_unique<WebDriverAdapter>(o);
}

/// Sets a dotted key ("keyword_policy.blacklist") in a configuration document.
void set_dotted(json& doc, const std::string& key, const std::string& raw) {
  json* at = &doc;
  std::stringstream parts(key);
  std::string part;
  std::vector<std::string> path;
  while (std::getline(parts, part, '.')) path.push_back(part);
  if (path.empty()) throw Error(ErrorCode::InvalidDocument, "empty key");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!at->is_object()) throw Error(ErrorCode::InvalidDocument, "'" + key + "' does not name a field");
    at = &(*at)[path[i]];
  }
  json value = json::parse(raw, nullptr, false);
  (*at)[path.back()] = value.is_discarded() ? json(raw) : value;
}

int cmd_config_init(const std::string& out, const std::string& forum_id, const std::string& from) {
  CrawlConfiguration config;
  if (!from.empty()) config = load_configuration(from);
  if (!forum_id.empty()) config.forum_id = forum_id;
  if (config.forum_id.empty()) throw Error(ErrorCode::InvalidDocument, "--forum-id is required");
  save_configuration(config, out);
  std::cout << redacted_dump(config) << '\n';
  return 0;
}

int cmd_config_edit(const std::string& path, const std::vector<std::string>& sets, const std::string& secret_env) {
  auto doc = configuration_to_json(load_configuration(path), false);
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidDocument, "expected key=value, got '" + s + "'");
    set_dotted(doc, s.substr(0, eq), s.substr(eq + 1));
  }
  // Secrets come from the environment so they never sit in shell history.
  if (!secret_env.empty()) {
    const char* secret = std::getenv(secret_env.c_str());
    if (!secret) throw Error(ErrorCode::InvalidDocument, "environment variable " + secret_env + " is not set");
    doc["credentials"]["secret"] = secret;
  }
  auto config = configuration_from_json(doc);
  save_configuration(config, path);
  std::cout << redacted_dump(config) << '\n';
  return 0;
}

int cmd_train(const std::string& config_path, int port, const std::string& seed_path) {
  auto config = load_config(config_path);
  std::optional<TrainedProfile> seed;
  if (!seed_path.empty()) seed = load_profile(seed_path);
  auto adapter = make_adapter(config, {});
  Store store(config.store_path);
  PromptBroker prompts;
  TrainingSession session(config, *adapter, prompts.prompter(), seed);
  TrainingApi api(session, prompts, adapter.get(), &store);
  int bound = api.start(port);
  std::cout << "training API listening on http://127.0.0.1:" << bound << std::endl;
  auto profile = api.wait_finalized();
  api.stop();
  adapter->close();
  if (!profile) return kFailureExit;
  save_profile(*profile, config.profile_path);
  std::cout << "profile written to " << config.profile_path << std::endl;
  return 0;
}

int cmd_crawl(const std::string& config_path, std::uint64_t seed, const std::string& profile_path,
              std::optional<std::size_t> max_threads, std::string clock_kind, const std::string& start) {
  auto config = load_config(config_path);
  auto profile = load_profile(profile_path.empty() ? config.profile_path : profile_path);
  if (clock_kind.empty()) clock_kind = config.driver.kind == DriverKind::Fixture ? "simulated" : "system";
  std::unique_ptr<Clock> clock;
  if (clock_kind == "simulated") {
    auto t0 = start.empty() ? std::optional(std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()))
                            : parse_timestamp(start);
    if (!t0) throw Error(ErrorCode::InvalidDocument, "--start is not an ISO-8601 UTC timestamp");
    clock = std::make_unique<SimulatedClock>(*t0);
  } else {
    clock = std::make_unique<SystemClock>();
  }
  auto adapter = make_adapter(config, [&clock] { return clock->now(); });
  Store store(config.store_path);
  CommandChannel commands;
  PromptBroker prompts;
  auto ask = prompts.prompter();
  CrawlOptions options;
  options.seed = seed;
  options.max_threads = max_threads;
  options.prompt = [&](PromptKind kind, const std::string& question) {
    std::cerr << "[" << to_string(kind) << "] " << question << std::endl;
    return ask(kind, question);
  };

  // One reader serves both prompt answers and pause/resume/terminate.
  std::thread reader([&] {
    std::string line;
    while (std::getline(std::cin, line)) {
      if (prompts.pending()) {
        prompts.answer(std::nullopt, line);
        continue;
      }
      auto trimmed = line.substr(0, line.find_last_not_of(" \t\r") + 1);
      if (trimmed.empty()) continue;
      if (auto c = command_from_string(trimmed))
        commands.post(*c);
      else
        std::cerr << "unknown command '" << trimmed << "' (pause, resume, terminate)" << std::endl;
    }
  });
  reader.detach();

  auto summary = run_crawl(profile, config, *adapter, store, *clock, commands, options);
  std::cout << summary_to_json(summary).dump(2) << std::endl;
  return 0;
}

int cmd_tickets(const std::string& config_path, const std::string& file, bool show) {
  auto config = load_config(config_path);
  Store store(config.store_path);
  if (!show) {
    std::string text;
    if (file.empty() || file == "-") {
      std::stringstream in;
      in << std::cin.rdbuf();
      text = in.str();
    } else {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw Error(ErrorCode::StoreError, "cannot read " + file);
      text.assign(std::istreambuf_iterator<char>(in), {});
    }
    auto bundle = parse_ticket_bundle(text);
    if (bundle.pairs.empty()) throw Error(ErrorCode::InvalidDocument, "the ticket bundle is empty");
    store.save_tickets(bundle);
  }
  json keys = json::array();
  for (const auto& [k, v] : store.tickets().pairs) keys.push_back(k);
  std::cout << json{{"pairs", keys.size()}, {"keys", keys}}.dump() << '\n';
  return 0;
}

int cmd_export(const std::string& config_path, const std::string& out_path, bool fetch_log) {
  auto config = load_config(config_path);
  Store store(config.store_path);
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::StoreError, "cannot write " + out_path);
  }
  std::ostream& out = file.is_open() ? file : std::cout;
  if (fetch_log)
    store.export_fetch_log_jsonl(out);
  else
    store.export_jsonl(out);
  return 0;
}

int cmd_fixture_gen(const std::string& out, const std::string& options_path, FixtureGenOptions o) {
  if (!options_path.empty()) {
    std::ifstream in(options_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::StoreError, "cannot read " + options_path);
    o = fixture_gen_options_from_json(json::parse(in));
  }
  auto forum = generate_fixture_forum(out, o);
  std::cout << forum.expected.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supervised forum crawler"};
  app.require_subcommand(1);

  auto* config = app.add_subcommand("config", "Create or edit a crawl configuration");
  config->require_subcommand(1);
  std::string cfg_out, cfg_forum, cfg_from, cfg_path, cfg_secret_env;
  std::vector<std::string> cfg_sets;
  auto* init = config->add_subcommand("init", "Write a new configuration");
  init->add_option("--out", cfg_out, "Configuration file to write")->required();
  init->add_option("--forum-id", cfg_forum, "Forum identifier");
  init->add_option("--from", cfg_from, "Start from an existing configuration")->check(CLI::ExistingFile);
  auto* edit = config->add_subcommand("edit", "Change fields of a configuration");
  edit->add_option("--config", cfg_path, "Configuration file")->required()->check(CLI::ExistingFile);
  edit->add_option("--set", cfg_sets, "key=value with a dotted key; JSON values are parsed");
  edit->add_option("--secret-env", cfg_secret_env, "Read the account secret from this environment variable");
  auto* show = config->add_subcommand("show", "Print a configuration with the secret redacted");
  show->add_option("--config", cfg_path, "Configuration file")->required()->check(CLI::ExistingFile);

  auto* train = app.add_subcommand("train", "Run a training session behind the local HTTP API");
  std::string config_path, seed_profile, profile_path;
  int port = 0;
  train->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  train->add_option("--port", port, "Loopback port (0 picks a free one)")->check(CLI::Range(0, 65535));
  train->add_option("--seed-profile", seed_profile, "Existing profile to retrain from")->check(CLI::ExistingFile);

  auto* crawl = app.add_subcommand("crawl", "Crawl with a trained profile; stdin takes pause, resume, terminate");
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_threads;
  std::string clock_kind, start;
  crawl->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  crawl->add_option("--seed", seed, "Random seed for thread order and delays");
  crawl->add_option("--profile", profile_path, "Profile file (default: the configured one)");
  crawl->add_option("--max-threads", max_threads, "Stop after entering this many threads");
  crawl->add_option("--clock", clock_kind, "simulated or system (default: simulated for fixture sites)")
      ->check(CLI::IsMember({"simulated", "system"}));
  crawl->add_option("--start", start, "Simulated clock start, e.g. 2024-03-04T09:00:00Z");

  auto* tickets = app.add_subcommand("tickets", "Store a pasted ticket bundle");
  std::string ticket_file;
  bool ticket_show = false;
  tickets->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  tickets->add_option("--file", ticket_file, "Bundle file, '-' for stdin (default)");
  tickets->add_flag("--show", ticket_show, "List stored ticket keys");

  auto* exporter = app.add_subcommand("export", "Write stored records as JSON lines");
  std::string export_out;
  bool export_log = false;
  exporter->add_option("--config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  exporter->add_option("--out", export_out, "Output file (default stdout)");
  exporter->add_flag("--fetch-log", export_log, "Export the fetch log instead of posts");

  auto* gen = app.add_subcommand("fixture-gen", "Generate a synthetic forum with a reference profile");
  FixtureGenOptions g;
  std::string gen_out, gen_options;
  gen->add_option("--out", gen_out, "Output directory (replaced)")->required();
  gen->add_option("--options", gen_options, "Options JSON file")->check(CLI::ExistingFile);
  gen->add_option("--sections", g.sections)->check(CLI::Range(1, 1000));
  gen->add_option("--subsections", g.subsections)->check(CLI::Range(0, 1000));
  gen->add_option("--threads", g.threads)->check(CLI::Range(1, 100000));
  gen->add_option("--pages", g.pages)->check(CLI::Range(1, 1000));
  gen->add_option("--posts", g.posts)->check(CLI::Range(1, 1000));
  gen->add_option("--per-listing-page", g.threads_per_listing_page)->check(CLI::Range(1, 1000));
  gen->add_option("--seed", g.seed);
  gen->add_flag("--last-page-landing", g.last_page_landing);
  gen->add_flag("--hidden-content", g.hidden_content);
  gen->add_flag("--ticket-gate", g.ticket_gate);
  gen->add_flag("--randomized-ids", g.randomized_ids);
  gen->add_flag("--mutate-thread-links", g.mutate_thread_links);
  gen->add_option("--blacklisted-titles", g.blacklisted_titles)->check(CLI::NonNegativeNumber);
  gen->add_option("--blacklisted-content", g.blacklisted_content)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsageExit;
  }

  try {
    if (init->parsed()) return cmd_config_init(cfg_out, cfg_forum, cfg_from);
    if (edit->parsed()) return cmd_config_edit(cfg_path, cfg_sets, cfg_secret_env);
    if (show->parsed()) {
      std::cout << configuration_to_json(load_configuration(cfg_path), true).dump(2) << '\n';
      return 0;
    }
    if (train->parsed()) return cmd_train(config_path, port, seed_profile);
    if (crawl->parsed()) return cmd_crawl(config_path, seed, profile_path, max_threads, clock_kind, start);
    if (tickets->parsed()) return cmd_tickets(config_path, ticket_file, ticket_show);
    if (exporter->parsed()) return cmd_export(config_path, export_out, export_log);
    if (gen->parsed()) return cmd_fixture_gen(gen_out, gen_options, g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailureExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailureExit;
  }
  return kUsageExit;
}

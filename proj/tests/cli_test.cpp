#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "forumcrawl/config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& stdin_text = "") {
  auto input = fs::temp_directory_path() / ("forumcrawl_cli_in_" + std::to_string(::getpid()));
  std::ofstream(input) << stdin_text;
  std::string command = std::string(FORUMCRAWL_CLI) + " " + args + " < " + input.string() + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  fs::remove(input);
  return r;
}

struct CliForum {
  fs::path root = fs::temp_directory_path() / ("forumcrawl_cli_" + std::to_string(::getpid()));
  CliForum() {
    auto gen = cli("fixture-gen --out " + root.string() +
                   " --sections 2 --subsections 1 --threads 4 --pages 2 --posts 2 --per-listing-page 3"
                   " --blacklisted-content 1");
    EXPECT_EQ(gen.exit_code, 0);
  }
  ~CliForum() { fs::remove_all(root); }
  std::string config() const { return (root / "config.json").string(); }
};

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("").exit_code, 2);
  EXPECT_EQ(cli("crawl --bogus").exit_code, 2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
  EXPECT_EQ(cli("crawl --config /nonexistent.json").exit_code, 2);
  EXPECT_EQ(cli("--help").exit_code, 0);
}

TEST(Cli, SeededCrawlIsReproducible) {
  CliForum forum;
  const std::string args = "crawl --config " + forum.config() + " --seed 42 --start 2024-03-04T09:00:00Z";
  auto first = cli(args);
  ASSERT_EQ(first.exit_code, 0);
  fs::remove(forum.root / "forumcrawl.db");
  auto second = cli(args);
  ASSERT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.out, second.out);
  auto summary = json::parse(first.out);
  EXPECT_EQ(summary["threads"], 7);
  EXPECT_EQ(summary["discarded"], 1);
  EXPECT_EQ(summary["posts"], 28);

  auto other = cli("crawl --config " + forum.config() + " --seed 7");
  // Already visited: the second run over the same store enters nothing new.
  EXPECT_EQ(json::parse(other.out)["threads"], 0);

  auto exported = cli("export --config " + forum.config());
  ASSERT_EQ(exported.exit_code, 0);
  EXPECT_EQ(std::count(exported.out.begin(), exported.out.end(), '\n'), 28);
}

TEST(Cli, StdinTerminateStopsTheCrawl) {
  CliForum forum;
  auto r = cli("crawl --config " + forum.config() + " --seed 1", "terminate\n");
  ASSERT_EQ(r.exit_code, 0);
  auto summary = json::parse(r.out);
  EXPECT_EQ(summary["status"], "terminated");
  EXPECT_FALSE(summary["completed"].get<bool>());
  EXPECT_LT(summary["threads"].get<int>(), 7);
}

TEST(Cli, ConfigEditTicketsAndRedaction) {
  CliForum forum;
  ::setenv("FORUMCRAWL_TEST_SECRET", "hunter2 horse", 1);
  auto edit = cli("config edit --config " + forum.config() +
                  " --set keyword_policy.blacklist='[\"alpha\"]' --set wpm_range='[100,120]'"
                  " --secret-env FORUMCRAWL_TEST_SECRET");
  ASSERT_EQ(edit.exit_code, 0);
  EXPECT_EQ(edit.out.find("hunter2"), std::string::npos);
  auto config = forumcrawl::load_configuration(forum.config());
  EXPECT_EQ(config.credentials.secret, "hunter2 horse");
  EXPECT_EQ(config.keyword_policy.blacklist, std::vector<std::string>{"alpha"});
  EXPECT_EQ(config.wpm_range.first, 100.0);

  auto shown = cli("config show --config " + forum.config());
  EXPECT_EQ(shown.out.find("hunter2"), std::string::npos);
  EXPECT_NE(shown.out.find("***"), std::string::npos);

  EXPECT_EQ(cli("config edit --config " + forum.config() + " --set wpm_range=fast").exit_code, 1);

  auto stored = cli("tickets --config " + forum.config(), "cf-commitment-2.58=a\ncf-tokens=[\"b\"]\n");
  ASSERT_EQ(stored.exit_code, 0);
  EXPECT_EQ(json::parse(stored.out)["pairs"], 2);
  EXPECT_EQ(cli("tickets --config " + forum.config(), "").exit_code, 1);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <future>
#include <thread>

#include <httplib.h>

#include "forumcrawl/api.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/fixture.hpp"
#include "forumcrawl/fixturegen.hpp"

using namespace forumcrawl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ApiRig {
  GeneratedForum forum;
  std::unique_ptr<FixtureAdapter> adapter;
  PromptBroker prompts;
  Store store{":memory:"};
  std::unique_ptr<TrainingSession> session;
  std::unique_ptr<TrainingApi> api;
  std::unique_ptr<httplib::Client> client;

  explicit ApiRig(int subsections = 1) {
    FixtureGenOptions o;
    o.sections = 1;
    o.subsections = subsections;
    o.threads = 4;
    o.pages = 2;
    o.posts = 2;
    o.threads_per_listing_page = 3;
    forum = generate_fixture_forum(fs::temp_directory_path() / ("forumcrawl_api_" + std::to_string(::getpid())), o);
    adapter = std::make_unique<FixtureAdapter>(std::make_shared<FixtureSite>(forum.root), FixtureOptions{});
    session = std::make_unique<TrainingSession>(forum.config, *adapter, prompts.prompter());
    api = std::make_unique<TrainingApi>(*session, prompts, adapter.get(), &store);
    int port = api->start();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
  }
  ~ApiRig() {
    api->stop();
    fs::remove_all(forum.root);
  }

  std::pair<int, json> get(const std::string& path) {
    auto res = client->Get(path);
    if (!res) return {0, nullptr};
    return {res->status, json::parse(res->body, nullptr, false)};
  }
  std::pair<int, json> post(const std::string& path, const json& body) { return post_raw(path, body.dump()); }
  std::pair<int, json> post_raw(const std::string& path, const std::string& body) {
    auto res = client->Post(path, body, "application/json");
    if (!res) return {0, nullptr};
    return {res->status, json::parse(res->body, nullptr, false)};
  }

  std::vector<std::string> matches(const std::string& expr) {
    auto [status, body] = get("/resolve?expr=" + httplib::detail::encode_query_param(expr));
    EXPECT_EQ(status, 200) << body.dump();
    return body["matches"].get<std::vector<std::string>>();
  }

  json settle() {
    for (int i = 0; i < 2000; ++i) {
      auto [status, state] = get("/session/state");
      if (!state["busy"].get<bool>()) return state;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    ADD_FAILURE() << "session stayed busy";
    return nullptr;
  }

  void label_and_confirm(const std::map<std::string, std::string>& labels) {
    auto [status, page] = get("/page/current");
    ASSERT_EQ(status, 200) << page.dump();
    json body = {{"labels", json::object()}};
    for (const auto& [label, expr] : labels) body["labels"][label] = matches(expr);
    auto [ls, results] = post("/page/labels", body);
    ASSERT_EQ(ls, 200) << results.dump();
    auto [cs, accepted] = post("/page/confirm", json::object());
    ASSERT_EQ(cs, 202) << accepted.dump();
    auto state = settle();
    ASSERT_TRUE(state["last_gate"]["passed"].get<bool>()) << state["last_gate"].dump();
  }
};

}  // namespace

TEST(Api, LabelConfirmFlowThroughLoginAndHome) {
  ApiRig rig;
  auto [s0, state] = rig.get("/session/state");
  ASSERT_EQ(s0, 200);
  EXPECT_EQ(state["current_page"], "login");
  EXPECT_FALSE(state["busy"].get<bool>());
  EXPECT_EQ(state["prompt"], nullptr);

  EXPECT_EQ(rig.post("/page/confirm", json::object()).first, 409);

  auto [s1, page] = rig.get("/page/current");
  ASSERT_EQ(s1, 200);
  EXPECT_EQ(page["state"], "Labeling");
  EXPECT_NE(page["html"].get<std::string>().find("name=\"password\""), std::string::npos);

  auto [s2, results] = rig.post("/page/labels", {{"labels",
                                                  {{"username_field", rig.matches("//input[@name='login']")},
                                                   {"password_field", rig.matches("//input[@name='password']")},
                                                   {"login_button", rig.matches("//button[@type='submit']")}}}});
  ASSERT_EQ(s2, 200) << results.dump();
  EXPECT_EQ(results["state"], "Verifying");
  EXPECT_EQ(results["labels"]["username_field"]["status"], "locator");
  EXPECT_EQ(results["labels"]["username_field"]["strategy"], "S1_RobustAttribute");
  EXPECT_EQ(results["labels"]["username_field"]["matches"].size(), 1u);

  auto [s3, accepted] = rig.post("/page/confirm", json::object());
  EXPECT_EQ(s3, 202);
  state = rig.settle();
  EXPECT_TRUE(state["last_gate"]["passed"].get<bool>());
  EXPECT_EQ(state["pages"][0]["state"], "Done");
  EXPECT_EQ(state["current_page"], "home");

  rig.label_and_confirm({{"section_link", "//h3[@class='node-title']/a"}});
  EXPECT_TRUE(rig.get("/session/state").second["logged_in"].get<bool>());

  // The listing's tagged-thread expression previews every thread row.
  auto [s4, section] = rig.get("/page/current");
  ASSERT_EQ(s4, 200);
  EXPECT_EQ(section["type"], "section");
  auto [s5, preview] = rig.get("/resolve?type=subsection&expr=//a");
  EXPECT_EQ(s5, 409) << preview.dump();
}

TEST(Api, ResolvePreviewOnListing) {
  ApiRig rig(0);
  rig.label_and_confirm({{"username_field", "//input[@name='login']"},
                         {"password_field", "//input[@name='password']"},
                         {"login_button", "//button[@type='submit']"}});
  rig.label_and_confirm({{"section_link", "//h3[@class='node-title']/a"}});
  rig.get("/page/current");
  auto [status, body] = rig.get("/resolve?expr=" + httplib::detail::encode_query_param(
                                                       "//div[contains(concat(' ',normalize-space(@class),' '),' "
                                                       "structItem-title ')]/a[@data-xf-init='preview-tooltip']"));
  ASSERT_EQ(status, 200) << body.dump();
  EXPECT_EQ(body["count"], 3);
  for (const auto& p : body["matches"]) EXPECT_EQ(p.get<std::string>().rfind("/html[1]/body[1]/", 0), 0u);
  EXPECT_EQ(rig.get("/resolve?expr=" + httplib::detail::encode_query_param("//a[last()]")).first, 422);
  EXPECT_EQ(rig.get("/resolve").first, 422);
}

TEST(Api, InvalidPayloadsAre422) {
  ApiRig rig;
  rig.get("/page/current");
  EXPECT_EQ(rig.post_raw("/page/labels", "{not json").first, 422);
  EXPECT_EQ(rig.post("/page/labels", {{"labels", {{"no_such_label", json::array()}}}}).first, 422);
  EXPECT_EQ(rig.post("/page/labels", {{"labels", {{"post_content", json::array({"/html[1]/body[1]"})}}}}).first, 422);
  EXPECT_EQ(rig.post("/page/labels", {{"labels", {{"username_field", json::array({"not a path"})}}}}).first, 422);
  EXPECT_EQ(rig.post("/page/labels", {{"labels", {{"username_field", json::array({"/html[1]/body[1]/div[99]"})}}}}).first,
            422);
  EXPECT_EQ(rig.post("/page/manual-xpath", {{"label", "username_field"}}).first, 422);
  EXPECT_EQ(rig.post("/page/manual-xpath", {{"label", "username_field"}, {"expr", "//nothing"}}).first, 422);
  EXPECT_EQ(rig.post("/page/labels", {{"type", "nowhere"}, {"labels", json::object()}}).first, 422);
  EXPECT_EQ(rig.post("/tickets", {{"bundle", ""}}).first, 422);
  EXPECT_EQ(rig.post("/session/finalize", json::object()).first, 409);
}

TEST(Api, ManualXpathScriptResetAndIgnore) {
  ApiRig rig;
  rig.get("/page/current");
  auto [s1, manual] = rig.post("/page/manual-xpath", {{"label", "login_button"}, {"expr", "//button"}});
  ASSERT_EQ(s1, 200) << manual.dump();
  EXPECT_EQ(manual["labels"]["login_button"]["strategy"], "Manual");
  EXPECT_EQ(manual["state"], "Verifying");

  auto [s2, dry] = rig.post("/page/script", {{"source", click_script_template("//input[@name='login']")}, {"dry_run", true}});
  EXPECT_EQ(s2, 200) << dry.dump();
  EXPECT_EQ(dry["script"], nullptr);
  EXPECT_TRUE(dry["dry_run"].get<bool>());

  auto [s3, reset] = rig.post("/page/reset", json::object());
  ASSERT_EQ(s3, 200);
  EXPECT_EQ(reset["state"], "Labeling");
  EXPECT_TRUE(reset["labels"].empty());

  auto inputs = rig.matches("//form//input");
  ASSERT_GE(inputs.size(), 2u);
  auto [s4, multi] = rig.post("/page/labels", {{"labels", {{"username_field", json::array({inputs[0]})}}}});
  ASSERT_EQ(s4, 200);
  EXPECT_EQ(rig.post("/page/ignore", {{"label", "username_field"}, {"nodes", json::array({inputs[1]})}}).first, 422);
}

TEST(Api, PromptsAreAnsweredOverHttp) {
  ApiRig rig;
  EXPECT_EQ(rig.post("/prompt/answer", {{"answer", "solved"}}).first, 409);
  auto asker = std::async(std::launch::async, [&] {
    return rig.prompts.prompter()(PromptKind::ElementStillVisible, "is it there?");
  });
  json prompt;
  for (int i = 0; i < 400 && prompt.is_null(); ++i) {
    prompt = rig.get("/session/state").second["prompt"];
    if (prompt.is_null()) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ASSERT_FALSE(prompt.is_null());
  EXPECT_EQ(prompt["kind"], "element_still_visible");
  EXPECT_EQ(rig.post("/prompt/answer", {{"id", prompt["id"].get<std::uint64_t>() + 1}, {"answer", "no"}}).first, 409);
  EXPECT_EQ(rig.post("/prompt/answer", {{"id", prompt["id"]}, {"answer", "no"}}).first, 200);
  EXPECT_EQ(asker.get(), "no");
  EXPECT_EQ(rig.get("/session/state").second["prompt"], nullptr);
}

TEST(Api, StopCancelsAPendingPrompt) {
  PromptBroker broker;
  auto asker = std::async(std::launch::async, [&] {
    try {
      broker.prompter()(PromptKind::CaptchaSolved, "solve");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::StoreError;
  });
  while (!broker.pending()) std::this_thread::yield();
  broker.cancel();
  EXPECT_EQ(asker.get(), ErrorCode::Timeout);
}

TEST(Api, TicketsAreStoredAndSecretsNeverLeave) {
  ApiRig rig;
  auto [s1, t] = rig.post("/tickets", {{"bundle", "cf-commitment-2.58=abc\ncf-tokens=[\"x\"]"}});
  ASSERT_EQ(s1, 200) << t.dump();
  EXPECT_EQ(t["pairs"], 2);
  EXPECT_EQ(rig.store.tickets().pairs.size(), 2u);

  const std::string secret = rig.forum.config.credentials.secret;
  ASSERT_FALSE(secret.empty());
  for (const auto& path : {"/session/state", "/page/current"}) {
    auto res = rig.client->Get(path);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->body.find(secret), std::string::npos) << path;
  }
  auto state = rig.get("/session/state").second;
  EXPECT_EQ(state["config"]["credentials"]["username"], "analyst");
}

TEST(Api, BindsLoopbackOnly) {
  ApiRig rig;
  EXPECT_GT(rig.api->port(), 0);
  httplib::Client other("localhost", rig.api->port());
  EXPECT_TRUE(other.Get("/session/state"));
}

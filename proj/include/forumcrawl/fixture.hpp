#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "forumcrawl/fetch.hpp"

namespace forumcrawl {

/// A dynamic behavior bound to the fixture pages whose URL path matches
/// `pages` (fnmatch glob, '*' crosses '/').
struct FixtureBehavior {
  enum class Kind {
    /// `{{XF_UID}}` in the page is replaced by a fresh id on every load.
    RerandomizeIds,
    /// The first `count` loads of each matching URL fail with `error`.
    FailFirst,
    /// Serves a challenge interstitial unless every key in `required_keys`
    /// has been injected.
    TicketGate,
    /// Loads after the first apply the `replace` pairs.
    MutateAfterVisit,
    /// The live DOM (not the saved snapshot) applies the `replace` pairs.
    LiveMutation,
    /// Loading takes `delay_ms`; beyond the load timeout this is a Timeout.
    Slow,
    /// An inline challenge widget is shown until the operator confirms.
    InlineCaptcha,
    /// Serves the login page until the session has logged in.
    RequireLogin,
  };
  Kind kind;
  std::string pages = "*";
  int count = 1;
  ErrorCode error = ErrorCode::NetworkError;
  std::vector<std::string> required_keys;
  std::vector<std::pair<std::string, std::string>> replace;
  int delay_ms = 0;
};

struct FixtureLogin {
  /// Path of the login form page.
  std::string page = "/login/";
  /// Path the form posts to.
  std::string action = "/login/login";
  std::string username;
  std::string password;
  std::string success = "/";
  std::string username_field = "login";
  std::string password_field = "password";
};

struct FixtureManifest {
  std::string base_url = "http://forum.test";
  std::optional<FixtureLogin> login;
  std::vector<FixtureBehavior> behaviors;
  /// Generator bookkeeping (expected counts, etc.), passed through.
  nlohmann::json info = nlohmann::json::object();
};

FixtureManifest manifest_from_json(const nlohmann::json& doc);
nlohmann::json manifest_to_json(const FixtureManifest& manifest);

/// Server side of a fixture forum: files, manifest and per-URL counters.
/// Shared by every adapter session that browses it.
class FixtureSite {
 public:
  /// Reads `<root>/manifest.json` when present.
  explicit FixtureSite(std::filesystem::path root);
  FixtureSite(std::filesystem::path root, FixtureManifest manifest);

  const std::filesystem::path& root() const { return root_; }
  const FixtureManifest& manifest() const { return manifest_; }
  std::string url_for(std::string_view path) const;
  /// URL path, or nullopt for URLs outside the fixture origin.
  std::optional<std::string> path_of(std::string_view url) const;
  std::filesystem::path file_for(std::string_view path) const;

  /// Increments and returns the load count for (behavior index, path).
  int bump(std::size_t behavior, const std::string& path);
  int visits(const std::string& path) const;
  int record_visit(const std::string& path);
  std::uint64_t next_uid();

 private:
  std::filesystem::path root_;
  FixtureManifest manifest_;
  mutable std::mutex mu_;
  std::map<std::pair<std::size_t, std::string>, int> counters_;
  std::map<std::string, int> visits_;
  std::uint64_t uid_ = 0;
};

struct FixtureOptions {
  std::chrono::milliseconds load_timeout{60'000};
  bool images_enabled = false;
  std::function<SysTime()> now;
};

/// Browser stand-in over a FixtureSite. Interprets the click template and
/// setTimeout waits in page scripts; buttons carrying
/// `data-fixture-action="X"` record action X, which reveals
/// `<script type="text/x-fixture-hidden" data-requires="X ...">` blocks.
class FixtureAdapter final : public AdapterBase {
 public:
  explicit FixtureAdapter(std::shared_ptr<FixtureSite> site, FixtureOptions options = {});

  PageHandle open(const std::string& url) override;
  PageHandle click(const Locator& locator) override;
  void fill(const Locator& locator, const std::string& value) override;
  PageHandle execute_script(const std::string& source) override;
  PageHandle refresh_snapshot() override;
  void inject_tickets(const TicketBundle& bundle) override;
  void mask_automation() override;
  void set_images_enabled(bool enabled) override;
  std::optional<PageHandle> current() const override;
  void close() override;

  /// DOM after the page's own scripts ran (LiveMutation applied).
  DomSnapshot live_dom() const;
  LiveDomProvider live_provider() override;
  const std::map<std::string, std::string>& ticket_storage() const { return tickets_; }
  bool logged_in() const { return logged_in_; }

 private:
  PageHandle load(const std::string& url, const std::string& action);
  PageHandle snapshot_current();
  PageHandle click_node(const NodeRef& node);
  void apply_reveals();

  std::shared_ptr<FixtureSite> site_;
  FixtureOptions options_;
  std::string session_id_;
  std::optional<std::string> url_;
  std::string html_;
  std::optional<PageHandle> handle_;
  std::map<std::string, std::string> form_values_;
  std::set<std::string> actions_;
  std::map<std::string, std::string> tickets_;
  bool masked_ = false;
  bool logged_in_ = false;
  bool captcha_pending_ = false;
  bool closed_ = false;
};

}  // namespace forumcrawl

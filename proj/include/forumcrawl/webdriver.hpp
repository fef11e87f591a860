#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "forumcrawl/fetch.hpp"

namespace forumcrawl {

struct WebDriverOptions {
  /// e.g. "http://127.0.0.1:4444"
  std::string endpoint = "http://127.0.0.1:4444";
  std::string browser = "firefox";
  bool headless = true;
  /// "socks5://host:port" or "host:port".
  std::optional<std::string> proxy;
  bool images_enabled = false;
  std::chrono::milliseconds load_timeout{60'000};
  /// No new sub-resource for this long counts as loaded.
  std::chrono::milliseconds quiescence{500};
  std::chrono::milliseconds poll_interval{100};
  /// Extension page whose storage receives ticket pairs; the current page
  /// is used when absent.
  std::optional<std::string> ticket_storage_url;
  std::function<SysTime()> now;
};

/// New-session capabilities for the options (image and proxy settings,
/// automation-flag suppression).
nlohmann::json webdriver_capabilities(const WebDriverOptions& options);

/// Live adapter speaking the W3C WebDriver protocol.
class WebDriverAdapter final : public AdapterBase {
 public:
  /// Starts a session; throws Error(NetworkError) if the endpoint refuses.
  explicit WebDriverAdapter(WebDriverOptions options);
  ~WebDriverAdapter() override;

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

  const std::string& session_id() const { return session_; }
  LiveDomProvider live_provider() override;

 private:
  struct Http;
  nlohmann::json command(const std::string& method, const std::string& path, const nlohmann::json& body = nullptr);
  nlohmann::json execute_sync(const std::string& script, const nlohmann::json& args = nlohmann::json::array());
  nlohmann::json execute_async(const std::string& script, const nlohmann::json& args = nlohmann::json::array());
  void wait_for_load();
  void install_mask();
  void log_images();
  std::string element_for(const Locator& locator);
  PageHandle snapshot();

  WebDriverOptions options_;
  std::unique_ptr<Http> http_;
  std::string session_;
  std::optional<PageHandle> handle_;
  bool masked_ = false;
};

}  // namespace forumcrawl

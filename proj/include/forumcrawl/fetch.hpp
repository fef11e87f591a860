#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forumcrawl/config.hpp"
#include "forumcrawl/dom.hpp"
#include "forumcrawl/locator.hpp"
#include "forumcrawl/records.hpp"

namespace forumcrawl {

struct TrainedProfile;

struct PageHandle {
  std::string session_id;
  std::string current_url;
  DomSnapshot snapshot;
};

enum class CaptchaKind { InterstitialChallenge, InlineWidget };

std::string_view to_string(CaptchaKind kind);

struct CaptchaSignal {
  CaptchaKind kind;
  std::string matched_marker;
  bool operator==(const CaptchaSignal&) const = default;
};

struct CaptchaMarker {
  enum class Where { TitleContains, XPath };
  CaptchaKind kind;
  Where where;
  std::string pattern;
};

/// Interstitial title patterns and challenge-widget element patterns.
const std::vector<CaptchaMarker>& default_captcha_markers();

/// First marker (in table order) found in the snapshot.
std::optional<CaptchaSignal> detect_captcha(const DomSnapshot& snapshot,
                                            std::span<const CaptchaMarker> markers = default_captcha_markers());

/// Template inserted by the script editor's click prefill.
inline constexpr std::string_view kXPathPlaceholder = "YOUR_XPATH_HERE";
std::string click_script_template(std::string_view xpath = kXPathPlaceholder);

/// Page acquisition. Every network-bound call appends exactly one entry to
/// the fetch log before returning. A call made while another is in flight
/// on the same adapter fails with Error(Busy).
class FetchAdapter {
 public:
  virtual ~FetchAdapter() = default;

  /// Throws Error(Timeout) / Error(NetworkError); both retryable.
  virtual PageHandle open(const std::string& url) = 0;
  /// Clicks the first non-ignored match. Error(NotFound) on zero matches.
  virtual PageHandle click(const Locator& locator) = 0;
  /// Sets the value of the first non-ignored match (form input).
  virtual void fill(const Locator& locator, const std::string& value) = 0;
  /// Error(ScriptError) carries the page's error text.
  virtual PageHandle execute_script(const std::string& source) = 0;
  /// Re-reads the current DOM without navigating.
  virtual PageHandle refresh_snapshot() = 0;
  /// Error(InjectionFailed) lists every pair that could not be written.
  virtual void inject_tickets(const TicketBundle& bundle) = 0;
  /// Error(MaskFailed) when the automation flag stays visible.
  virtual void mask_automation() = 0;
  virtual void set_images_enabled(bool enabled) = 0;
  virtual std::optional<PageHandle> current() const = 0;
  /// Re-reads the rendered DOM of the current page for strategy S4; empty
  /// when the adapter has no live view.
  virtual LiveDomProvider live_provider() { return {}; }
  /// Entries appended since the previous call.
  virtual std::vector<FetchLogEntry> drain_log() = 0;
  virtual void close() = 0;
};

/// Shared bookkeeping for adapters: busy guard and fetch log.
class AdapterBase : public FetchAdapter {
 public:
  std::vector<FetchLogEntry> drain_log() override;

 protected:
  class BusyGuard {
   public:
    explicit BusyGuard(AdapterBase& adapter);
    ~BusyGuard();
    BusyGuard(const BusyGuard&) = delete;
    BusyGuard& operator=(const BusyGuard&) = delete;

   private:
    AdapterBase& adapter_;
  };

  void log(std::string url, std::string action, std::string outcome);
  std::function<SysTime()> now_ = [] { return std::chrono::system_clock::now(); };

 private:
  std::atomic<bool> busy_{false};
  std::mutex log_mu_;
  std::vector<FetchLogEntry> log_;
};

enum class PromptKind { CaptchaSolved, ElementStillVisible, Tickets };

std::string_view to_string(PromptKind kind);

/// Blocking operator question; returns the typed answer.
using OperatorPrompt = std::function<std::string(PromptKind kind, const std::string& question)>;

/// Prompts until the operator answers "solved" while a CAPTCHA is present.
/// Returns the refreshed handle.
PageHandle await_captcha(FetchAdapter& adapter, PageHandle handle, const OperatorPrompt& prompt,
                         int max_prompts = 5);

/// Opens the login page, fills the trained fields and submits. Throws
/// Error(LoginFailed) when the resulting page still shows the login fields
/// and Error(ProfileLocatorMissing) when a login locator is untrained.
PageHandle login(FetchAdapter& adapter, const TrainedProfile& profile, const std::string& login_url,
                 const Credentials& credentials, const OperatorPrompt& prompt);

}  // namespace forumcrawl

#include "forumcrawl/fetch.hpp"

#include <algorithm>

#include "forumcrawl/error.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/xpath.hpp"

namespace forumcrawl {

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::string_view to_string(CaptchaKind kind) {
  return kind == CaptchaKind::InterstitialChallenge ? "InterstitialChallenge" : "InlineWidget";
}

std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::CaptchaSolved: return "captcha_solved";
    case PromptKind::ElementStillVisible: return "element_still_visible";
    case PromptKind::Tickets: return "tickets";
  }
  return "captcha_solved";
}

const std::vector<CaptchaMarker>& default_captcha_markers() {
  using W = CaptchaMarker::Where;
  static const std::vector<CaptchaMarker> markers = {
      {CaptchaKind::InterstitialChallenge, W::TitleContains, "just a moment"},
      {CaptchaKind::InterstitialChallenge, W::TitleContains, "attention required"},
      {CaptchaKind::InterstitialChallenge, W::TitleContains, "checking your browser"},
      {CaptchaKind::InterstitialChallenge, W::TitleContains, "ddos-guard"},
      {CaptchaKind::InterstitialChallenge, W::XPath, "//*[@id='cf-challenge-running']"},
      {CaptchaKind::InterstitialChallenge, W::XPath, "//form[@id='challenge-form']"},
      {CaptchaKind::InlineWidget, W::XPath, "//*[contains(@class,'g-recaptcha')]"},
      {CaptchaKind::InlineWidget, W::XPath, "//iframe[contains(@src,'recaptcha')]"},
      {CaptchaKind::InlineWidget, W::XPath, "//*[contains(@class,'h-captcha')]"},
      {CaptchaKind::InlineWidget, W::XPath, "//*[contains(@class,'cf-turnstile')]"},
  };
  return markers;
}

std::optional<CaptchaSignal> detect_captcha(const DomSnapshot& snapshot, std::span<const CaptchaMarker> markers) {
  std::optional<std::string> title;
  for (const auto& m : markers) {
    if (m.where == CaptchaMarker::Where::TitleContains) {
      if (!title) {
        auto nodes = evaluate_xpath(snapshot, "//title");
        title = nodes.empty() ? std::string() : lower(text_content(nodes.front()).text);
      }
      if (title->find(lower(m.pattern)) != std::string::npos) return CaptchaSignal{m.kind, m.pattern};
    } else if (!evaluate_xpath(snapshot, m.pattern).empty()) {
      return CaptchaSignal{m.kind, m.pattern};
    }
  }
  return std::nullopt;
}

std::string click_script_template(std::string_view xpath) {
  std::string escaped;
  for (char c : xpath) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += c;
  }
  return "document.evaluate(\"" + escaped +
         "\", document, null, XPathResult.FIRST_ORDERED_NODE_TYPE, null).singleNodeValue.click();";
}

AdapterBase::BusyGuard::BusyGuard(AdapterBase& adapter) : adapter_(adapter) {
  if (adapter_.busy_.exchange(true))
    throw Error(ErrorCode::Busy, "another navigation is in flight on this adapter session");
}

AdapterBase::BusyGuard::~BusyGuard() { adapter_.busy_ = false; }

void AdapterBase::log(std::string url, std::string action, std::string outcome) {
  std::lock_guard lock(log_mu_);
  log_.push_back({std::move(url), now_(), std::move(action), std::move(outcome)});
}

std::vector<FetchLogEntry> AdapterBase::drain_log() {
  std::lock_guard lock(log_mu_);
  std::vector<FetchLogEntry> out;
  out.swap(log_);
  return out;
}

PageHandle await_captcha(FetchAdapter& adapter, PageHandle handle, const OperatorPrompt& prompt, int max_prompts) {
  for (int asked = 0;; ++asked) {
    auto signal = detect_captcha(handle.snapshot);
    if (!signal) return handle;
    if (!prompt)
      throw Error(ErrorCode::FetchFailed, "CAPTCHA (" + std::string(to_string(signal->kind)) + ") on " +
                                              handle.current_url + " and no operator to solve it");
    if (asked >= max_prompts)
      throw Error(ErrorCode::FetchFailed, "CAPTCHA still present on " + handle.current_url + " after " +
                                              std::to_string(max_prompts) + " confirmations");
    auto answer = lower(trim(prompt(PromptKind::CaptchaSolved,
                                    "CAPTCHA detected (" + std::string(to_string(signal->kind)) + ", marker " +
                                        signal->matched_marker + ") on " + handle.current_url +
                                        ". Solve it in the browser, then type 'solved'.")));
    if (answer == "solved") handle = adapter.refresh_snapshot();
  }
}

PageHandle login(FetchAdapter& adapter, const TrainedProfile& profile, const std::string& login_url,
                 const Credentials& credentials, const OperatorPrompt& prompt) {
  auto required = [&](LabelKind label) -> const Locator& {
    const Locator* l = profile.locator(PageType::Login, label);
    if (!l)
      throw Error(ErrorCode::ProfileLocatorMissing, "login/" + std::string(to_string(label)) + " is not trained");
    return *l;
  };
  const Locator& user = required(LabelKind::UsernameField);
  const Locator& pass = required(LabelKind::PasswordField);
  const Locator& button = required(LabelKind::LoginButton);

  PageHandle handle = await_captcha(adapter, adapter.open(login_url), prompt);
  if (const auto* page = profile.page(PageType::Login); page && page->script && !page->script->empty())
    handle = adapter.execute_script(*page->script);
  adapter.fill(user, credentials.username);
  adapter.fill(pass, credentials.secret);
  handle = await_captcha(adapter, adapter.click(button), prompt);
  if (!resolve(handle.snapshot, user).empty())
    throw Error(ErrorCode::LoginFailed, "login form still present at " + handle.current_url);
  return handle;
}

}  // namespace forumcrawl

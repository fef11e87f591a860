#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "forumcrawl/config.hpp"
#include "forumcrawl/control.hpp"
#include "forumcrawl/fetch.hpp"
#include "forumcrawl/locator.hpp"
#include "forumcrawl/profile.hpp"

namespace forumcrawl {

enum class PageState { Pending, Labeling, Verifying, StabilityCheck, Done };

std::string_view to_string(PageState state);

/// Stability-gate rounds before a label is handed to the operator.
inline constexpr int kMaxGateRounds = 4;

using LabelAssignments = std::map<LabelKind, std::vector<AbsolutePath>>;

struct RetrainLabels {
  std::set<LabelKind> labels;
};
struct IgnoreNodes {
  LabelKind label;
  std::vector<AbsolutePath> nodes;
};
struct ResetPage {};
using Correction = std::variant<RetrainLabels, IgnoreNodes, ResetPage>;

struct PageRecord {
  PageType type;
  std::string url;
  PageState state = PageState::Pending;
  std::optional<DomSnapshot> snapshot;
  LabelAssignments assignments;
  std::map<LabelKind, InferenceResult> results;
  /// Labels the operator declared absent after a reload ("no" answer).
  std::set<LabelKind> accepted_absent;
  std::optional<std::string> script;
  std::vector<std::string> notes;
};

struct GateResult {
  bool passed = false;
  int rounds = 0;
  std::vector<std::string> notes;
};

/// Supervised training over the configured page queue: login, home,
/// section, optional subsection, thread.
class TrainingSession {
 public:
  /// Throws Error(MissingUrl) naming the first absent required page type.
  TrainingSession(CrawlConfiguration config, FetchAdapter& adapter, OperatorPrompt prompt = {},
                  std::optional<TrainedProfile> seed = std::nullopt, Clock* clock = nullptr);

  const CrawlConfiguration& config() const { return config_; }
  const std::vector<PageRecord>& pages() const { return pages_; }
  const PageRecord& page(PageType type) const;
  /// First page not yet Done, or nullopt when all are.
  std::optional<PageType> current_page() const;
  bool logged_in() const { return logged_in_; }

  /// Loads the page (Pending -> Labeling), logging in first once the login
  /// page is Done. A seed pre-populates assignments and locators.
  const PageRecord& load_page(PageType type);

  std::map<LabelKind, InferenceResult> submit_labels(PageType type, const LabelAssignments& assignments);
  std::map<LabelKind, InferenceResult> correct_labels(PageType type, const Correction& correction);
  Locator submit_manual_xpath(PageType type, LabelKind label, const std::string& expr);

  /// strftime-style pattern used to parse the label's text at crawl time.
  void set_date_format(PageType type, LabelKind label, std::optional<std::string> format);

  /// Verifying -> StabilityCheck, then runs the stability gate and, when a
  /// NextPage label is trained, the next-page check. Done on success,
  /// back to Verifying otherwise.
  GateResult confirm(PageType type);
  GateResult run_stability_gate(PageType type);
  GateResult verify_next_navigation(PageType type);

  /// Runs the script through the adapter and re-snapshots the page. With
  /// `persist` the script is kept for the profile.
  const PageRecord& attach_script(PageType type, const std::string& source, bool persist = true);

  /// Throws Error(IncompleteSession) listing pages that are not Done.
  TrainedProfile finalize_profile() const;

 private:
  PageRecord& record(PageType type);
  void require_state(const PageRecord& p, PageState state) const;
  std::vector<NodeRef> targets(const PageRecord& p, LabelKind label) const;
  InferenceResult infer(PageRecord& p, LabelKind label, Strategy start);
  std::map<LabelKind, Locator> settled_locators(const PageRecord& p) const;
  DomSnapshot reload(PageRecord& p);

  CrawlConfiguration config_;
  FetchAdapter& adapter_;
  OperatorPrompt prompt_;
  std::optional<TrainedProfile> seed_;
  Clock* clock_;
  std::vector<PageRecord> pages_;
  bool logged_in_ = false;
};

}  // namespace forumcrawl

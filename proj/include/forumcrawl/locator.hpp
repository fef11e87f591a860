#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "forumcrawl/dom.hpp"
#include "forumcrawl/error.hpp"
#include "forumcrawl/labels.hpp"
#include "forumcrawl/xpath.hpp"

namespace forumcrawl {

/// Inference strategies in fallback order.
enum class Strategy { RobustAttribute, AbsoluteCommon, CommonClass, LiveResolve, Manual };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> strategy_from_string(std::string_view name);
std::optional<Strategy> next_strategy(Strategy strategy);

struct Locator {
  XPathExpr expr;
  Strategy strategy = Strategy::Manual;
  /// Absolute paths (serialized) of matches the operator blacklisted.
  std::set<std::string> ignore;
  std::optional<std::string> date_format;

  bool operator==(const Locator&) const = default;
};

inline constexpr std::size_t kRobustSearchBudget = 10'000;

/// Re-renders the current page and returns its live DOM.
using LiveDomProvider = std::function<DomSnapshot()>;

/// Attribute-prioritized unique locator for a single node.
Locator infer_s1(const DomSnapshot& snapshot, std::span<const NodeRef> targets,
                 std::size_t budget = kRobustSearchBudget);
/// Common absolute path; indices where targets disagree are dropped.
Locator infer_s2(const DomSnapshot& snapshot, std::span<const NodeRef> targets);
/// `//tag[class-token]...` over the class tokens shared by every target.
Locator infer_s3(const DomSnapshot& snapshot, std::span<const NodeRef> targets);
/// Relocates targets in the live DOM and derives a common path there.
Locator infer_s4(const LiveDomProvider& live, const DomSnapshot& snapshot, std::span<const NodeRef> targets);

struct StrategyFailure {
  Strategy strategy;
  ErrorCode code;
  std::string message;
  bool operator==(const StrategyFailure&) const = default;
};

struct NeedsManual {
  std::vector<StrategyFailure> trail;
  bool operator==(const NeedsManual&) const = default;
};

using InferenceResult = std::variant<Locator, NeedsManual>;

/// Runs strategies from `start` upward and returns the first success.
/// S4 is skipped (and not recorded) when no live provider is given.
InferenceResult infer_cascade(const DomSnapshot& snapshot, std::span<const NodeRef> targets, Strategy start,
                              const LiveDomProvider* live = nullptr);

/// Adds the absolute paths of `unwanted` to the ignore set.
/// Throws Error(NotAMatch) if a node is not matched by the locator.
Locator apply_ignore(const Locator& locator, std::span<const NodeRef> unwanted, const DomSnapshot& snapshot);

/// Evaluates the expression and removes ignored nodes, preserving order.
std::vector<NodeRef> resolve(const DomSnapshot& snapshot, const Locator& locator);

enum class StabilityOutcome { Stable, Missing, Overmatching };

struct LabelStability {
  StabilityOutcome outcome = StabilityOutcome::Stable;
  std::size_t matches = 0;
  /// Matches beyond the training snapshot's count (Overmatching only).
  std::size_t surplus = 0;
};

struct StabilityReport {
  std::map<LabelKind, LabelStability> labels;
  int reload_count = 0;
  DomSnapshot reloaded;

  bool any_missing() const;
};

using Refetch = std::function<DomSnapshot()>;

/// Reloads once and re-resolves every locator. Network failures from
/// `refetch` surface as Error(FetchFailed).
StabilityReport verify_stability(const Refetch& refetch, const DomSnapshot& training,
                                 const std::map<LabelKind, Locator>& locators);

}  // namespace forumcrawl

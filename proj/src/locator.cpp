#include "forumcrawl/locator.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_set>

namespace forumcrawl {

namespace {

constexpr std::string_view kPriorityAttributes[] = {"name", "class", "title", "alt", "value"};
constexpr std::string_view kBlacklistedAttributes[] = {"src", "href", "onclick", "style", "height", "width"};
constexpr std::size_t kMaxAttributeSet = 8;

bool blacklisted(std::string_view name) {
  return std::find(std::begin(kBlacklistedAttributes), std::end(kBlacklistedAttributes), name) !=
         std::end(kBlacklistedAttributes);
}

int priority_rank(std::string_view name) {
  auto it = std::find(std::begin(kPriorityAttributes), std::end(kPriorityAttributes), name);
  return it == std::end(kPriorityAttributes) ? -1 : static_cast<int>(it - std::begin(kPriorityAttributes));
}

void require_targets(const DomSnapshot& snapshot, std::span<const NodeRef> targets) {
  if (targets.empty()) throw Error(ErrorCode::EmptyInput, "no target nodes");
  for (const auto& t : targets)
    if (!snapshot.owns(t) || !t.is_element())
      throw Error(ErrorCode::ForeignNode, "target is not an element of " + snapshot.source_url());
}

NodeRef ancestor(NodeRef node, std::size_t levels) {
  for (std::size_t i = 0; i < levels && node.valid(); ++i) node = node.parent();
  return node;
}

bool has_position(const XPathStep& step) {
  return std::any_of(step.predicates.begin(), step.predicates.end(),
                     [](const auto& p) { return p.kind == XPathPredicate::Kind::Position; });
}

XPathPredicate equals_predicate(std::string_view name, std::string_view value) {
  XPathPredicate p;
  p.kind = XPathPredicate::Kind::AttributeEquals;
  p.name = std::string(name);
  p.value = std::string(value);
  return p;
}

// Usable attributes of a node for S1, priority attributes first, then the
// rest in document order. `id` is handled by its own transformation.
std::vector<Attribute> usable_attributes(const NodeRef& node) {
  std::vector<std::pair<int, Attribute>> ranked;
  int order = 0;
  for (const auto& a : node.attributes()) {
    ++order;
    if (a.name == "id" || blacklisted(a.name) || a.value.empty()) continue;
    if (quote_literal(a.value).empty()) continue;
    int rank = priority_rank(a.name);
    ranked.push_back({rank >= 0 ? rank : 100 + order, a});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Attribute> out;
  for (auto& r : ranked) out.push_back(std::move(r.second));
  return out;
}

bool step_matches(const XPathStep& step, const NodeRef& node) {
  if (step.name_test != "*" && node.tag() != step.name_test) return false;
  for (const auto& p : step.predicates) {
    switch (p.kind) {
      case XPathPredicate::Kind::AttributeEquals: {
        auto v = node.attribute(p.name);
        if (!v || *v != p.value) return false;
        break;
      }
      default: break;  // S1 only builds equality predicates before the position
    }
  }
  return true;
}

class RobustSearch {
 public:
  RobustSearch(const DomSnapshot& snapshot, NodeRef target, std::size_t budget)
      : snapshot_(snapshot), target_(target), budget_(budget) {}

  std::optional<XPathPath> run() {
    XPathPath start;
    start.steps.push_back({true, "*", {}});
    std::deque<XPathPath> queue{start};
    seen_.insert(serialize_path(start));
    while (!queue.empty()) {
      XPathPath current = std::move(queue.front());
      queue.pop_front();
      for (auto& candidate : transformations(current)) {
        if (!seen_.insert(serialize_path(candidate)).second) continue;
        if (++evaluated_ > budget_) return std::nullopt;
        if (unique(candidate)) return candidate;
        queue.push_back(std::move(candidate));
      }
    }
    return std::nullopt;
  }

  std::size_t evaluated() const { return evaluated_; }

 private:
  bool unique(const XPathPath& path) const {
    auto matches = evaluate_xpath(snapshot_, XPathExpr::from_paths({path}));
    return matches.size() == 1 && matches.front() == target_;
  }

  std::vector<XPathPath> transformations(const XPathPath& path) const {
    std::vector<XPathPath> out;
    const XPathStep& head = path.steps.front();
    NodeRef anc = ancestor(target_, path.steps.size() - 1);
    if (!anc.valid() || !anc.is_element()) return out;

    auto with_head = [&](auto&& mutate) {
      XPathPath copy = path;
      mutate(copy.steps.front());
      out.push_back(std::move(copy));
    };

    // convertStar
    if (head.name_test == "*" && !has_position(head)) with_head([&](XPathStep& s) { s.name_test = anc.tag(); });

    // addId
    if (auto id = anc.attribute("id"); id && !id->empty() && head.predicates.empty() && !quote_literal(*id).empty())
      with_head([&](XPathStep& s) { s.predicates.push_back(equals_predicate("id", *id)); });

    const bool open_head = head.name_test != "*" && head.predicates.empty();
    auto attrs = usable_attributes(anc);

    // addAttribute
    if (open_head)
      for (const auto& a : attrs)
        with_head([&](XPathStep& s) { s.predicates.push_back(equals_predicate(a.name, a.value)); });

    // addAttributeSet: subsets of size >= 2, smaller sets first
    if (open_head && attrs.size() >= 2) {
      const std::size_t n = std::min(attrs.size(), kMaxAttributeSet);
      for (std::size_t size = 2; size <= n; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
          with_head([&](XPathStep& s) {
            for (std::size_t i = 0; i < n; ++i)
              if (pick[i]) s.predicates.push_back(equals_predicate(attrs[i].name, attrs[i].value));
          });
        } while (std::prev_permutation(pick.begin(), pick.end()));
      }
    }

    // addPosition: ordinal among siblings passing the head's test so far
    if (!has_position(head)) {
      NodeRef parent = anc.parent();
      if (parent.valid()) {
        std::uint32_t k = 0;
        for (const auto& sib : parent.element_children()) {
          if (step_matches(head, sib)) ++k;
          if (sib == anc) break;
        }
        if (k > 0) {
          with_head([&](XPathStep& s) {
            XPathPredicate p;
            p.kind = XPathPredicate::Kind::Position;
            p.position = k;
            s.predicates.push_back(p);
          });
        }
      }
    }

    // addLevel
    if (path.steps.size() < target_.depth()) {
      XPathPath copy = path;
      copy.steps.front().descendant = false;
      copy.steps.insert(copy.steps.begin(), XPathStep{true, "*", {}});
      out.push_back(std::move(copy));
    }
    return out;
  }

  const DomSnapshot& snapshot_;
  NodeRef target_;
  std::size_t budget_;
  std::size_t evaluated_ = 0;
  std::unordered_set<std::string> seen_;
};

XPathPath common_path(const std::vector<AbsolutePath>& paths) {
  const auto& first = paths.front();
  for (const auto& p : paths) {
    if (p.steps.size() != first.steps.size())
      throw Error(ErrorCode::ShapeMismatch,
                  "path lengths differ: " + first.to_string() + " vs " + p.to_string());
    for (std::size_t i = 0; i < p.steps.size(); ++i)
      if (p.steps[i].tag != first.steps[i].tag)
        throw Error(ErrorCode::ShapeMismatch, "tags differ at step " + std::to_string(i + 1) + ": " +
                                                  first.to_string() + " vs " + p.to_string());
  }
  XPathPath out;
  for (std::size_t i = 0; i < first.steps.size(); ++i) {
    XPathStep step{false, first.steps[i].tag, {}};
    bool agree = std::all_of(paths.begin(), paths.end(),
                             [&](const AbsolutePath& p) { return p.steps[i].index == first.steps[i].index; });
    if (agree) {
      XPathPredicate pos;
      pos.kind = XPathPredicate::Kind::Position;
      pos.position = first.steps[i].index;
      step.predicates.push_back(pos);
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

// Identity of a node that survives script-driven restructuring: tag, the
// non-id attributes and the normalized text.
using Fingerprint = std::tuple<std::string, std::vector<Attribute>, std::string>;

Fingerprint fingerprint(const NodeRef& node) {
  std::vector<Attribute> attrs;
  for (const auto& a : node.attributes())
    if (a.name != "id") attrs.push_back(a);
  std::sort(attrs.begin(), attrs.end(), [](const auto& x, const auto& y) {
    return std::tie(x.name, x.value) < std::tie(y.name, y.value);
  });
  return {node.tag(), std::move(attrs), text_content(node).text};
}

std::vector<NodeRef> with_fingerprint(const DomSnapshot& snapshot, const Fingerprint& fp) {
  std::vector<NodeRef> out;
  for (const auto& el : snapshot.elements()) {
    if (el.tag() != std::get<0>(fp)) continue;
    if (fingerprint(el) == fp) out.push_back(el);
  }
  return out;
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::RobustAttribute: return "S1_RobustAttribute";
    case Strategy::AbsoluteCommon: return "S2_AbsoluteCommon";
    case Strategy::CommonClass: return "S3_CommonClass";
    case Strategy::LiveResolve: return "S4_LiveResolve";
    case Strategy::Manual: return "Manual";
  }
  return "Manual";
}

std::optional<Strategy> strategy_from_string(std::string_view name) {
  for (auto s : {Strategy::RobustAttribute, Strategy::AbsoluteCommon, Strategy::CommonClass, Strategy::LiveResolve,
                 Strategy::Manual})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::optional<Strategy> next_strategy(Strategy strategy) {
  if (strategy == Strategy::Manual) return std::nullopt;
  return static_cast<Strategy>(static_cast<int>(strategy) + 1);
}

Locator infer_s1(const DomSnapshot& snapshot, std::span<const NodeRef> targets, std::size_t budget) {
  require_targets(snapshot, targets);
  if (targets.size() > 1)
    throw Error(ErrorCode::MultiTarget, "robust attribute search takes one node, got " +
                                            std::to_string(targets.size()));
  RobustSearch search(snapshot, targets.front(), budget);
  auto found = search.run();
  if (!found)
    throw Error(ErrorCode::NotUnique, "no unique expression within " + std::to_string(budget) + " candidates for " +
                                          absolute_path(snapshot, targets.front()).to_string());
  return Locator{XPathExpr::from_paths({*found}), Strategy::RobustAttribute, {}, std::nullopt};
}

Locator infer_s2(const DomSnapshot& snapshot, std::span<const NodeRef> targets) {
  require_targets(snapshot, targets);
  std::vector<AbsolutePath> paths;
  for (const auto& t : targets) paths.push_back(absolute_path(snapshot, t));
  return Locator{XPathExpr::from_paths({common_path(paths)}), Strategy::AbsoluteCommon, {}, std::nullopt};
}

Locator infer_s3(const DomSnapshot& snapshot, std::span<const NodeRef> targets) {
  require_targets(snapshot, targets);
  const std::string& tag = targets.front().tag();
  std::vector<std::string> common = targets.front().class_tokens();
  std::sort(common.begin(), common.end());
  common.erase(std::unique(common.begin(), common.end()), common.end());
  for (const auto& t : targets) {
    if (t.tag() != tag) throw Error(ErrorCode::NoCommonClass, "targets differ in tag: " + tag + " vs " + t.tag());
    auto tokens = t.class_tokens();
    std::sort(tokens.begin(), tokens.end());
    std::vector<std::string> kept;
    std::set_intersection(common.begin(), common.end(), tokens.begin(), tokens.end(), std::back_inserter(kept));
    common = std::move(kept);
  }
  if (common.empty()) throw Error(ErrorCode::NoCommonClass, "no class token shared by all targets");
  XPathStep step{true, tag, {}};
  for (const auto& token : common) {
    XPathPredicate p;
    p.kind = XPathPredicate::Kind::ClassToken;
    p.name = "class";
    p.value = token;
    step.predicates.push_back(p);
  }
  return Locator{XPathExpr::from_paths({XPathPath{{step}}}), Strategy::CommonClass, {}, std::nullopt};
}

Locator infer_s4(const LiveDomProvider& live, const DomSnapshot& snapshot, std::span<const NodeRef> targets) {
  require_targets(snapshot, targets);
  if (!live) throw Error(ErrorCode::LiveResolveFailed, "no live page handle");
  DomSnapshot current;
  try {
    current = live();
  } catch (const Error& e) {
    throw Error(ErrorCode::LiveResolveFailed, std::string("live DOM unavailable: ") + e.what());
  }
  std::vector<AbsolutePath> paths;
  for (const auto& t : targets) {
    auto fp = fingerprint(t);
    auto training_matches = with_fingerprint(snapshot, fp);
    auto rank = static_cast<std::size_t>(
        std::find(training_matches.begin(), training_matches.end(), t) - training_matches.begin());
    auto live_matches = with_fingerprint(current, fp);
    if (rank >= live_matches.size())
      throw Error(ErrorCode::LiveResolveFailed,
                  "target " + absolute_path(snapshot, t).to_string() + " not found in live DOM");
    paths.push_back(absolute_path(current, live_matches[rank]));
  }
  XPathPath common;
  try {
    common = common_path(paths);
  } catch (const Error& e) {
    throw Error(ErrorCode::LiveResolveFailed, std::string("live paths: ") + e.what());
  }
  return Locator{XPathExpr::from_paths({common}), Strategy::LiveResolve, {}, std::nullopt};
}

InferenceResult infer_cascade(const DomSnapshot& snapshot, std::span<const NodeRef> targets, Strategy start,
                              const LiveDomProvider* live) {
  NeedsManual manual;
  for (std::optional<Strategy> s = start; s && *s != Strategy::Manual; s = next_strategy(*s)) {
    try {
      switch (*s) {
        case Strategy::RobustAttribute: return infer_s1(snapshot, targets);
        case Strategy::AbsoluteCommon: return infer_s2(snapshot, targets);
        case Strategy::CommonClass: return infer_s3(snapshot, targets);
        case Strategy::LiveResolve:
          if (live == nullptr || !*live) continue;
          return infer_s4(*live, snapshot, targets);
        case Strategy::Manual: break;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::EmptyInput || e.code() == ErrorCode::ForeignNode) throw;
      manual.trail.push_back({*s, e.code(), e.what()});
    }
  }
  return manual;
}

Locator apply_ignore(const Locator& locator, std::span<const NodeRef> unwanted, const DomSnapshot& snapshot) {
  Locator out = locator;
  if (unwanted.empty()) return out;
  auto matches = evaluate_xpath(snapshot, locator.expr);
  for (const auto& node : unwanted) {
    if (std::find(matches.begin(), matches.end(), node) == matches.end())
      throw Error(ErrorCode::NotAMatch, "node is not matched by " + locator.expr.source());
    out.ignore.insert(absolute_path(snapshot, node).to_string());
  }
  return out;
}

std::vector<NodeRef> resolve(const DomSnapshot& snapshot, const Locator& locator) {
  auto matches = evaluate_xpath(snapshot, locator.expr);
  if (locator.ignore.empty()) return matches;
  std::erase_if(matches,
                [&](const NodeRef& n) { return locator.ignore.contains(absolute_path(snapshot, n).to_string()); });
  return matches;
}

bool StabilityReport::any_missing() const {
  return std::any_of(labels.begin(), labels.end(),
                     [](const auto& kv) { return kv.second.outcome == StabilityOutcome::Missing; });
}

StabilityReport verify_stability(const Refetch& refetch, const DomSnapshot& training,
                                 const std::map<LabelKind, Locator>& locators) {
  StabilityReport report;
  try {
    report.reloaded = refetch();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::FetchFailed, std::string("reload failed: ") + e.what());
  }
  report.reload_count = 1;
  for (const auto& [label, locator] : locators) {
    LabelStability s;
    s.matches = resolve(report.reloaded, locator).size();
    std::size_t expected = resolve(training, locator).size();
    if (s.matches == 0) {
      s.outcome = StabilityOutcome::Missing;
    } else if (s.matches > expected) {
      s.outcome = StabilityOutcome::Overmatching;
      s.surplus = s.matches - expected;
    }
    report.labels[label] = s;
  }
  return report;
}

}  // namespace forumcrawl

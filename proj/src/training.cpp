#include "forumcrawl/training.hpp"

#include <algorithm>

#include "forumcrawl/error.hpp"
#include "forumcrawl/xpath.hpp"

namespace forumcrawl {

namespace {

std::string normalize_answer(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

NeedsManual needs_manual(const InferenceResult* previous, Strategy strategy, ErrorCode code, std::string message) {
  NeedsManual out;
  if (previous)
    if (const auto* nm = std::get_if<NeedsManual>(previous)) out = *nm;
  out.trail.push_back({strategy, code, std::move(message)});
  return out;
}

/// Labels whose presence legitimately depends on the page position.
bool position_dependent(LabelKind label) {
  return label == LabelKind::NextPage || label == LabelKind::PrevPage || label == LabelKind::FirstPageButton;
}

}  // namespace

std::string_view to_string(PageState state) {
  switch (state) {
    case PageState::Pending: return "Pending";
    case PageState::Labeling: return "Labeling";
    case PageState::Verifying: return "Verifying";
    case PageState::StabilityCheck: return "StabilityCheck";
    case PageState::Done: return "Done";
  }
  return "Pending";
}

TrainingSession::TrainingSession(CrawlConfiguration config, FetchAdapter& adapter, OperatorPrompt prompt,
                                 std::optional<TrainedProfile> seed, Clock* clock)
    : config_(std::move(config)), adapter_(adapter), prompt_(std::move(prompt)), seed_(std::move(seed)),
      clock_(clock) {
  for (auto type : kAllPageTypes) {
    auto url = config_.urls.for_page(type);
    if (!url) {
      if (type == PageType::Subsection) continue;
      throw Error(ErrorCode::MissingUrl, "no URL configured for the " + std::string(to_string(type)) + " page");
    }
    PageRecord rec;
    rec.type = type;
    rec.url = *url;
    pages_.push_back(std::move(rec));
  }
}

PageRecord& TrainingSession::record(PageType type) {
  for (auto& p : pages_)
    if (p.type == type) return p;
  throw Error(ErrorCode::MissingUrl, std::string(to_string(type)) + " is not part of this session");
}

const PageRecord& TrainingSession::page(PageType type) const { return const_cast<TrainingSession*>(this)->record(type); }

std::optional<PageType> TrainingSession::current_page() const {
  for (const auto& p : pages_)
    if (p.state != PageState::Done) return p.type;
  return std::nullopt;
}

void TrainingSession::require_state(const PageRecord& p, PageState state) const {
  if (p.state != state)
    throw Error(ErrorCode::WrongPageState, std::string(to_string(p.type)) + " page is " +
                                               std::string(to_string(p.state)) + ", expected " +
                                               std::string(to_string(state)));
}

DomSnapshot TrainingSession::reload(PageRecord& p) {
  auto handle = await_captcha(adapter_, adapter_.open(p.url), prompt_);
  if (p.script && !p.script->empty()) handle = adapter_.execute_script(*p.script);
  return handle.snapshot;
}

const PageRecord& TrainingSession::load_page(PageType type) {
  auto& p = record(type);
  if (p.state != PageState::Pending && p.state != PageState::Labeling)
    throw Error(ErrorCode::WrongPageState,
                std::string(to_string(type)) + " page is " + std::string(to_string(p.state)) + "; reset it first");
  if (type != PageType::Login && !logged_in_) {
    auto& login_page = record(PageType::Login);
    if (login_page.state == PageState::Done) {
      TrainedProfile partial;
      partial.forum_id = config_.forum_id;
      partial.pages[PageType::Login].labels = settled_locators(login_page);
      partial.pages[PageType::Login].script = login_page.script;
      login(adapter_, partial, login_page.url, config_.credentials, prompt_);
      logged_in_ = true;
    }
  }
  const PageProfile* seeded = seed_ ? seed_->page(type) : nullptr;
  if (seeded && seeded->script && !p.script) p.script = seeded->script;
  p.snapshot = reload(p);
  p.assignments.clear();
  p.results.clear();
  p.accepted_absent.clear();
  if (seeded) {
    for (const auto& [label, locator] : seeded->labels) {
      auto nodes = resolve(*p.snapshot, locator);
      if (nodes.empty()) {
        p.notes.push_back("seed locator for " + std::string(to_string(label)) + " matches nothing; relabel it");
        continue;
      }
      auto& paths = p.assignments[label];
      for (const auto& n : nodes) paths.push_back(absolute_path(*p.snapshot, n));
      p.results[label] = locator;
    }
  }
  p.state = PageState::Labeling;
  return p;
}

std::vector<NodeRef> TrainingSession::targets(const PageRecord& p, LabelKind label) const {
  std::vector<NodeRef> out;
  auto it = p.assignments.find(label);
  if (it == p.assignments.end()) return out;
  for (const auto& path : it->second) {
    auto node = node_at(*p.snapshot, path);
    if (!node)
      throw Error(ErrorCode::ForeignNode, path.to_string() + " does not exist in the " +
                                              std::string(to_string(p.type)) + " snapshot");
    out.push_back(*node);
  }
  return out;
}

InferenceResult TrainingSession::infer(PageRecord& p, LabelKind label, Strategy start) {
  auto nodes = targets(p, label);
  LiveDomProvider live = adapter_.live_provider();
  std::optional<std::string> date_format;
  if (auto it = p.results.find(label); it != p.results.end())
    if (const auto* l = std::get_if<Locator>(&it->second)) date_format = l->date_format;
  auto result = infer_cascade(*p.snapshot, nodes, start, live ? &live : nullptr);
  if (auto* l = std::get_if<Locator>(&result)) l->date_format = date_format;
  return result;
}

std::map<LabelKind, Locator> TrainingSession::settled_locators(const PageRecord& p) const {
  std::map<LabelKind, Locator> out;
  for (const auto& [label, result] : p.results)
    if (const auto* l = std::get_if<Locator>(&result)) out.emplace(label, *l);
  return out;
}

std::map<LabelKind, InferenceResult> TrainingSession::submit_labels(PageType type,
                                                                    const LabelAssignments& requested) {
  auto& p = record(type);
  // The caller may pass this page's own assignments back.
  const LabelAssignments assignments = requested;
  require_state(p, PageState::Labeling);
  for (const auto& [label, paths] : assignments)
    if (!label_valid_for(type, label))
      throw Error(ErrorCode::InvalidLabelForPage,
                  std::string(to_string(label)) + " cannot be assigned on the " + std::string(to_string(type)) + " page");

  auto previous_assignments = std::move(p.assignments);
  auto previous_results = std::move(p.results);
  p.assignments.clear();
  p.results.clear();
  try {
    for (const auto& [label, paths] : assignments) {
      if (paths.empty()) continue;
      p.assignments[label] = paths;
      auto prev = previous_results.find(label);
      auto prev_paths = previous_assignments.find(label);
      // Unchanged pre-labeled assignments keep their locator.
      if (prev != previous_results.end() && prev_paths != previous_assignments.end() && prev_paths->second == paths &&
          std::holds_alternative<Locator>(prev->second)) {
        p.results.emplace(label, prev->second);
        continue;
      }
      // Validate every path before inferring.
      targets(p, label);
      p.results.emplace(label, infer(p, label, paths.size() > 1 ? Strategy::AbsoluteCommon : Strategy::RobustAttribute));
    }
  } catch (...) {
    p.assignments = std::move(previous_assignments);
    p.results = std::move(previous_results);
    throw;
  }
  p.state = PageState::Verifying;
  return p.results;
}

std::map<LabelKind, InferenceResult> TrainingSession::correct_labels(PageType type, const Correction& correction) {
  auto& p = record(type);
  require_state(p, PageState::Verifying);
  if (std::holds_alternative<ResetPage>(correction)) {
    p.assignments.clear();
    p.results.clear();
    p.accepted_absent.clear();
    p.state = PageState::Labeling;
    return p.results;
  }
  if (const auto* ignore = std::get_if<IgnoreNodes>(&correction)) {
    auto it = p.results.find(ignore->label);
    if (it == p.results.end() || !std::holds_alternative<Locator>(it->second))
      throw Error(ErrorCode::WrongPageState, std::string(to_string(ignore->label)) + " has no locator to refine");
    std::vector<NodeRef> nodes;
    for (const auto& path : ignore->nodes) {
      auto n = node_at(*p.snapshot, path);
      if (!n) throw Error(ErrorCode::ForeignNode, path.to_string() + " does not exist in the snapshot");
      nodes.push_back(*n);
    }
    it->second = apply_ignore(std::get<Locator>(it->second), nodes, *p.snapshot);
    return p.results;
  }
  const auto& retrain = std::get<RetrainLabels>(correction);
  for (auto label : retrain.labels) {
    auto it = p.results.find(label);
    if (it == p.results.end())
      throw Error(ErrorCode::WrongPageState, std::string(to_string(label)) + " has not been labeled");
    const auto* current = std::get_if<Locator>(&it->second);
    if (!current) {
      it->second = needs_manual(&it->second, Strategy::Manual, ErrorCode::NothingToEscalate,
                                "no strategy left; provide an expression");
      continue;
    }
    auto next = next_strategy(current->strategy);
    if (!next || *next == Strategy::Manual) {
      it->second = needs_manual(nullptr, current->strategy, ErrorCode::NothingToEscalate,
                                std::string("no strategy after ") + std::string(to_string(current->strategy)));
      continue;
    }
    it->second = infer(p, label, *next);
  }
  return p.results;
}

Locator TrainingSession::submit_manual_xpath(PageType type, LabelKind label, const std::string& expr) {
  auto& p = record(type);
  if (p.state != PageState::Verifying && p.state != PageState::Labeling)
    throw Error(ErrorCode::WrongPageState, std::string(to_string(type)) + " page is " + std::string(to_string(p.state)));
  if (!label_valid_for(type, label))
    throw Error(ErrorCode::InvalidLabelForPage,
                std::string(to_string(label)) + " cannot be assigned on the " + std::string(to_string(type)) + " page");
  auto it = p.results.find(label);
  if (it != p.results.end() && std::holds_alternative<Locator>(it->second))
    throw Error(ErrorCode::WrongPageState,
                std::string(to_string(label)) + " already has a locator; retrain it until it needs a manual expression");
  Locator locator{XPathExpr::parse(expr), Strategy::Manual, {}, {}};
  auto nodes = resolve(*p.snapshot, locator);
  if (nodes.empty()) throw Error(ErrorCode::NoMatch, "'" + expr + "' matches nothing on the " + std::string(to_string(type)) + " page");
  auto& paths = p.assignments[label];
  paths.clear();
  for (const auto& n : nodes) paths.push_back(absolute_path(*p.snapshot, n));
  p.results[label] = locator;
  p.state = PageState::Verifying;
  return locator;
}

void TrainingSession::set_date_format(PageType type, LabelKind label, std::optional<std::string> format) {
  auto& p = record(type);
  auto it = p.results.find(label);
  if (it == p.results.end() || !std::holds_alternative<Locator>(it->second))
    throw Error(ErrorCode::WrongPageState, std::string(to_string(label)) + " has no locator");
  std::get<Locator>(it->second).date_format = std::move(format);
}

GateResult TrainingSession::run_stability_gate(PageType type) {
  auto& p = record(type);
  require_state(p, PageState::StabilityCheck);
  GateResult gate;
  for (int round = 1; round <= kMaxGateRounds; ++round) {
    gate.rounds = round;
    auto locators = settled_locators(p);
    for (auto label : p.accepted_absent) locators.erase(label);
    auto report = verify_stability([&] { return reload(p); }, *p.snapshot, locators);
    std::vector<LabelKind> missing;
    for (const auto& [label, s] : report.labels) {
      if (s.outcome == StabilityOutcome::Missing) missing.push_back(label);
      if (s.outcome == StabilityOutcome::Overmatching)
        gate.notes.push_back(std::string(to_string(label)) + " matched " + std::to_string(s.surplus) +
                             " more node(s) after reload");
    }
    if (missing.empty()) {
      gate.passed = true;
      gate.notes.push_back("stable after " + std::to_string(round) + " round(s)");
      return gate;
    }
    bool manual_needed = false;
    for (auto label : missing) {
      auto& result = p.results.at(label);
      const Locator current = std::get<Locator>(result);
      std::string answer = "yes";
      if (prompt_)
        answer = normalize_answer(prompt_(PromptKind::ElementStillVisible,
                                          std::string(to_string(label)) + " matched nothing after reloading the " +
                                              std::string(to_string(type)) +
                                              " page. Can you still see the element? (yes/no)"));
      if (answer == "no" || answer == "n") {
        p.accepted_absent.insert(label);
        gate.notes.push_back(std::string(to_string(label)) + " accepted as absent by the operator");
        continue;
      }
      if (round == kMaxGateRounds) {
        result = needs_manual(nullptr, current.strategy, ErrorCode::EscalationExhausted,
                              "still missing after " + std::to_string(kMaxGateRounds) + " gate rounds");
        manual_needed = true;
        continue;
      }
      auto next = next_strategy(current.strategy);
      if (!next || *next == Strategy::Manual) {
        result = needs_manual(nullptr, current.strategy, ErrorCode::EscalationExhausted,
                              std::string("unstable and no strategy after ") + std::string(to_string(current.strategy)));
        manual_needed = true;
        continue;
      }
      result = infer(p, label, *next);
      if (std::holds_alternative<NeedsManual>(result)) {
        manual_needed = true;
      } else {
        gate.notes.push_back(std::string(to_string(label)) + " escalated from " +
                             std::string(to_string(current.strategy)) + " to " +
                             std::string(to_string(std::get<Locator>(result).strategy)));
      }
    }
    if (manual_needed) {
      gate.notes.push_back("some labels need a manual expression");
      return gate;
    }
  }
  return gate;
}

GateResult TrainingSession::verify_next_navigation(PageType type) {
  auto& p = record(type);
  GateResult gate;
  gate.rounds = 1;
  auto next_it = p.results.find(LabelKind::NextPage);
  if (next_it == p.results.end() || !std::holds_alternative<Locator>(next_it->second)) {
    gate.passed = true;
    gate.notes.push_back("no NextPage locator; next-page check skipped");
    return gate;
  }
  reload(p);
  PageHandle next;
  try {
    next = adapter_.click(std::get<Locator>(next_it->second));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFound) throw;
    gate.passed = true;
    gate.notes.push_back(std::string(to_string(ErrorCode::NoNextPage)) +
                         ": the page has no next page; next-page check skipped");
    return gate;
  }
  next = await_captcha(adapter_, next, prompt_);
  if (p.script && !p.script->empty()) next = adapter_.execute_script(*p.script);
  gate.passed = true;
  for (const auto& [label, locator] : settled_locators(p)) {
    if (position_dependent(label) || p.accepted_absent.count(label)) continue;
    if (resolve(next.snapshot, locator).empty()) {
      gate.passed = false;
      gate.notes.push_back(std::string(to_string(label)) + " matches nothing on the next page (" + next.current_url + ")");
    }
  }
  if (gate.passed) gate.notes.push_back("all locators resolve on the next page");
  return gate;
}

GateResult TrainingSession::confirm(PageType type) {
  auto& p = record(type);
  require_state(p, PageState::Verifying);
  for (const auto& [label, result] : p.results)
    if (std::holds_alternative<NeedsManual>(result))
      throw Error(ErrorCode::WrongPageState, std::string(to_string(label)) + " still needs a manual expression");
  p.state = PageState::StabilityCheck;
  GateResult gate;
  try {
    gate = run_stability_gate(type);
    if (gate.passed) {
      auto nav = verify_next_navigation(type);
      gate.passed = nav.passed;
      gate.notes.insert(gate.notes.end(), nav.notes.begin(), nav.notes.end());
    }
  } catch (...) {
    p.state = PageState::Verifying;
    throw;
  }
  p.notes.insert(p.notes.end(), gate.notes.begin(), gate.notes.end());
  p.state = gate.passed ? PageState::Done : PageState::Verifying;
  return gate;
}

const PageRecord& TrainingSession::attach_script(PageType type, const std::string& source, bool persist) {
  auto& p = record(type);
  if (p.state != PageState::Labeling && p.state != PageState::Verifying)
    throw Error(ErrorCode::WrongPageState, std::string(to_string(type)) + " page is " + std::string(to_string(p.state)));
  if (source.find_first_not_of(" \t\r\n") == std::string::npos) return p;
  auto handle = await_captcha(adapter_, adapter_.open(p.url), prompt_);
  handle = adapter_.execute_script(source);
  p.snapshot = handle.snapshot;
  if (persist) p.script = source;
  return p;
}

TrainedProfile TrainingSession::finalize_profile() const {
  std::vector<std::string> open;
  for (const auto& p : pages_)
    if (p.state != PageState::Done) open.push_back(std::string(to_string(p.type)) + " (" + std::string(to_string(p.state)) + ")");
  if (!open.empty()) {
    std::string msg = "pages not done:";
    for (const auto& o : open) msg += " " + o;
    throw Error(ErrorCode::IncompleteSession, msg);
  }
  TrainedProfile profile;
  profile.forum_id = config_.forum_id;
  auto now = clock_ ? clock_->now() : std::chrono::system_clock::now();
  profile.created_at = std::chrono::floor<std::chrono::seconds>(now);
  for (const auto& p : pages_) {
    PageProfile page;
    page.labels = settled_locators(p);
    page.script = p.script;
    profile.pages[p.type] = std::move(page);
  }
  return profile;
}

}  // namespace forumcrawl

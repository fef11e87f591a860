#include "forumcrawl/api.hpp"

#include <future>

#include <httplib.h>

#include "forumcrawl/error.hpp"
#include "forumcrawl/profile.hpp"
#include "forumcrawl/records.hpp"
#include "forumcrawl/timefmt.hpp"

namespace forumcrawl {

using nlohmann::json;

// --- prompts -----------------------------------------------------------------

OperatorPrompt PromptBroker::prompter() {
  return [this](PromptKind kind, const std::string& question) { return ask(kind, question); };
}

std::string PromptBroker::ask(PromptKind kind, const std::string& question) {
  std::unique_lock lock(mu_);
  if (cancelled_) throw Error(ErrorCode::Timeout, "operator prompt cancelled");
  pending_ = PendingPrompt{next_id_++, kind, question};
  answer_.reset();
  cv_.notify_all();
  cv_.wait(lock, [&] { return answer_.has_value() || cancelled_; });
  pending_.reset();
  if (!answer_) throw Error(ErrorCode::Timeout, "operator prompt cancelled");
  return *std::exchange(answer_, std::nullopt);
}

std::optional<PendingPrompt> PromptBroker::pending() const {
  std::lock_guard lock(mu_);
  return pending_;
}

bool PromptBroker::answer(std::optional<std::uint64_t> id, std::string text) {
  std::lock_guard lock(mu_);
  if (!pending_ || answer_ || (id && *id != pending_->id)) return false;
  answer_ = std::move(text);
  cv_.notify_all();
  return true;
}

void PromptBroker::cancel() {
  std::lock_guard lock(mu_);
  cancelled_ = true;
  cv_.notify_all();
}

// --- JSON views -----------------------------------------------------------------

json inference_to_json(const InferenceResult& result, const DomSnapshot* snapshot) {
  if (const auto* manual = std::get_if<NeedsManual>(&result)) {
    json trail = json::array();
    for (const auto& f : manual->trail)
      trail.push_back({{"strategy", to_string(f.strategy)}, {"code", to_string(f.code)}, {"message", f.message}});
    return {{"status", "needs_manual"}, {"trail", trail}};
  }
  const auto& locator = std::get<Locator>(result);
  json out = locator_to_json(locator);
  out["status"] = "locator";
  if (snapshot && !snapshot->empty()) {
    json matches = json::array();
    for (const auto& n : resolve(*snapshot, locator)) matches.push_back(absolute_path(*snapshot, n).to_string());
    out["matches"] = matches;
  }
  return out;
}

json page_record_to_json(const PageRecord& page, bool with_html) {
  const DomSnapshot* snap = page.snapshot ? &*page.snapshot : nullptr;
  json assignments = json::object(), labels = json::object(), absent = json::array();
  for (const auto& [label, nodes] : page.assignments) {
    json paths = json::array();
    for (const auto& n : nodes) paths.push_back(n.to_string());
    assignments[std::string(to_string(label))] = paths;
  }
  for (const auto& [label, result] : page.results) labels[std::string(to_string(label))] = inference_to_json(result, snap);
  for (auto label : page.accepted_absent) absent.push_back(to_string(label));
  json out = {{"type", to_string(page.type)},
              {"url", page.url},
              {"state", to_string(page.state)},
              {"assignments", assignments},
              {"labels", labels},
              {"accepted_absent", absent},
              {"notes", page.notes},
              {"script", page.script ? json(*page.script) : json(nullptr)}};
  if (with_html && snap) {
    out["html"] = snap->raw_bytes();
    out["source_url"] = snap->source_url();
    out["fetched_at"] = format_timestamp(snap->fetched_at());
  }
  return out;
}

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongPageState:
    case ErrorCode::IncompleteSession:
    case ErrorCode::NothingToEscalate:
    case ErrorCode::Busy:
      return 409;
    case ErrorCode::InvalidLabelForPage:
    case ErrorCode::ForeignNode:
    case ErrorCode::UnsupportedSyntax:
    case ErrorCode::NoMatch:
    case ErrorCode::NotAMatch:
    case ErrorCode::InvalidDocument:
    case ErrorCode::ScriptError:
    case ErrorCode::EmptyInput:
      return 422;
    case ErrorCode::FetchFailed:
    case ErrorCode::NetworkError:
    case ErrorCode::Timeout:
    case ErrorCode::NotFound:
    case ErrorCode::LoginFailed:
      return 502;
    default:
      return 500;
  }
}

// --- server ---------------------------------------------------------------------

struct TrainingApi::Server {
  httplib::Server http;
};

namespace {

json error_body(std::string_view code, const std::string& message) { return {{"error", code}, {"message", message}}; }

/// Request payloads are rejected with 422 through this error.
[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::InvalidDocument, message); }

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json doc = json::parse(req.body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) invalid("request body is not a JSON object");
  return doc;
}

LabelKind label_field(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) invalid(std::string("missing string field '") + key + "'");
  auto label = label_from_string(body[key].get<std::string>());
  if (!label) invalid("unknown label '" + body[key].get<std::string>() + "'");
  return *label;
}

std::vector<AbsolutePath> path_list(const json& value) {
  if (!value.is_array()) invalid("node paths must be an array of strings");
  std::vector<AbsolutePath> out;
  for (const auto& v : value) {
    if (!v.is_string()) invalid("node paths must be an array of strings");
    try {
      out.push_back(AbsolutePath::parse(v.get<std::string>()));
    } catch (const Error& e) {
      invalid("bad node path '" + v.get<std::string>() + "': " + e.message());
    }
  }
  return out;
}

json results_json(const TrainingSession& session, PageType type, const std::map<LabelKind, InferenceResult>& results) {
  const auto& p = session.page(type);
  const DomSnapshot* snap = p.snapshot ? &*p.snapshot : nullptr;
  json out = json::object();
  for (const auto& [label, r] : results) out[std::string(to_string(label))] = inference_to_json(r, snap);
  return {{"type", to_string(type)}, {"state", to_string(p.state)}, {"labels", out}};
}

}  // namespace

TrainingApi::TrainingApi(TrainingSession& session, PromptBroker& prompts, FetchAdapter* adapter, Store* store)
    : session_(session), prompts_(prompts), adapter_(adapter), store_(store), server_(std::make_unique<Server>()) {
  publish_state();
  install_routes();
}

TrainingApi::~TrainingApi() { stop(); }

int TrainingApi::start(int port) {
  port_ = port == 0 ? server_->http.bind_to_any_port("127.0.0.1") : (server_->http.bind_to_port("127.0.0.1", port) ? port : -1);
  if (port_ <= 0) throw Error(ErrorCode::NetworkError, "cannot bind 127.0.0.1:" + std::to_string(port));
  control_ = std::thread([this] { control_loop(); });
  listener_ = std::thread([this] { server_->http.listen_after_bind(); });
  server_->http.wait_until_ready();
  return port_;
}

void TrainingApi::stop() {
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    stopping_ = true;
    cv_.notify_all();
  }
  prompts_.cancel();
  server_->http.stop();
  if (listener_.joinable()) listener_.join();
  if (control_.joinable()) control_.join();
}

std::optional<TrainedProfile> TrainingApi::wait_finalized() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return finalized_.has_value() || stopping_; });
  return finalized_;
}

void TrainingApi::control_loop() {
  for (;;) {
    std::function<void()> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    job();
  }
}

TrainingApi::Reply TrainingApi::run(Task task) {
  std::promise<Reply> done;
  auto future = done.get_future();
  auto reply = launch(std::move(task), {}, [&done](Reply* r, std::exception_ptr error) {
    if (error)
      done.set_exception(error);
    else
      done.set_value(*r);
  });
  if (reply.status == 409) return reply;
  try {
    return future.get();
  } catch (const Error& e) {
    return {http_status_for(e.code()), error_body(to_string(e.code()), e.message())};
  } catch (const json::exception& e) {
    return {422, error_body("InvalidDocument", e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("Internal", e.what())};
  }
}

TrainingApi::Reply TrainingApi::launch(Task task, const std::function<void()>& precheck, Done done) {
  std::lock_guard lock(mu_);
  if (stopping_) return {409, error_body("Busy", "server is shutting down")};
  if (busy_) return {409, error_body("Busy", "the session is busy: " + activity_)};
  // Nothing runs on the control thread while busy_ is clear.
  if (precheck) precheck();
  busy_ = true;
  queue_.push_back([this, task = std::move(task), done = std::move(done)] {
    Reply reply;
    std::exception_ptr failure;
    json error;
    try {
      reply = task();
    } catch (const Error& e) {
      failure = std::current_exception();
      error = error_body(to_string(e.code()), e.message());
    } catch (const std::exception& e) {
      failure = std::current_exception();
      error = error_body("Internal", e.what());
    }
    publish_state();
    {
      std::lock_guard inner(mu_);
      if (!error.is_null()) last_error_ = error;
      busy_ = false;
      activity_.clear();
    }
    if (done) done(&reply, failure);
  });
  cv_.notify_all();
  return {202, {{"accepted", true}}};
}

json TrainingApi::state_json() const {
  json pages = json::array();
  for (const auto& p : session_.pages()) pages.push_back(page_record_to_json(p, false));
  auto current = session_.current_page();
  return {{"forum_id", session_.config().forum_id},
          {"current_page", current ? json(to_string(*current)) : json(nullptr)},
          {"logged_in", session_.logged_in()},
          {"pages", pages},
          {"config", configuration_to_json(session_.config(), true)}};
}

void TrainingApi::publish_state() {
  auto state = state_json();
  std::lock_guard lock(mu_);
  published_ = std::move(state);
}

PageType TrainingApi::target_page(const json& body) const {
  if (body.contains("type")) {
    if (!body["type"].is_string()) invalid("'type' must be a page type name");
    auto t = page_type_from_string(body["type"].get<std::string>());
    if (!t) invalid("unknown page type '" + body["type"].get<std::string>() + "'");
    return *t;
  }
  auto current = session_.current_page();
  if (!current) throw Error(ErrorCode::WrongPageState, "every page is done");
  return *current;
}

void TrainingApi::install_routes() {
  auto& http = server_->http;
  const std::string secret = session_.config().credentials.secret;

  auto send = [secret](httplib::Response& res, const Reply& reply) {
    auto text = reply.body.dump();
    if (!secret.empty())
      for (auto at = text.find(secret); at != std::string::npos; at = text.find(secret, at + 3))
        text.replace(at, secret.size(), "***");
    res.status = reply.status;
    res.set_content(text, "application/json");
  };
  // Payload problems found before the task is queued are reported directly.
  auto guarded = [send](auto body) {
    return [send, body](const httplib::Request& req, httplib::Response& res) {
      try {
        send(res, body(req));
      } catch (const Error& e) {
        send(res, {http_status_for(e.code()), error_body(to_string(e.code()), e.message())});
      } catch (const json::exception& e) {
        send(res, {422, error_body("InvalidDocument", e.what())});
      }
    };
  };
  auto activity = [this](std::string what) {
    std::lock_guard lock(mu_);
    activity_ = std::move(what);
  };

  http.Get("/session/state", guarded([this](const httplib::Request&) {
             std::lock_guard lock(mu_);
             json out = published_;
             out["busy"] = busy_;
             out["activity"] = activity_;
             auto p = prompts_.pending();
             out["prompt"] = p ? json{{"id", p->id}, {"kind", to_string(p->kind)}, {"question", p->question}}
                               : json(nullptr);
             out["last_gate"] = last_gate_;
             out["last_error"] = last_error_;
             return Reply{200, out};
           }));

  http.Get("/page/current", guarded([this, activity](const httplib::Request& req) {
             json sel = json::object();
             if (req.has_param("type")) sel["type"] = req.get_param_value("type");
             return run([this, sel, activity] {
               auto type = target_page(sel);
               if (session_.page(type).state == PageState::Pending) {
                 activity("loading " + std::string(to_string(type)));
                 session_.load_page(type);
               }
               return Reply{200, page_record_to_json(session_.page(type), true)};
             });
           }));

  http.Post("/page/labels", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              if (!body.contains("labels") || !body["labels"].is_object()) invalid("missing object field 'labels'");
              LabelAssignments assignments;
              for (const auto& [name, nodes] : body["labels"].items()) {
                auto label = label_from_string(name);
                if (!label) invalid("unknown label '" + name + "'");
                assignments[*label] = path_list(nodes);
              }
              std::map<LabelKind, std::optional<std::string>> formats;
              if (body.contains("date_formats")) {
                if (!body["date_formats"].is_object()) invalid("'date_formats' must be an object");
                for (const auto& [name, fmt] : body["date_formats"].items()) {
                  auto label = label_from_string(name);
                  if (!label) invalid("unknown label '" + name + "'");
                  if (!fmt.is_null() && !fmt.is_string()) invalid("date formats must be strings or null");
                  formats[*label] = fmt.is_null() ? std::nullopt : std::optional(fmt.get<std::string>());
                }
              }
              return run([this, body, assignments, formats] {
                auto type = target_page(body);
                session_.submit_labels(type, assignments);
                for (const auto& [label, fmt] : formats) session_.set_date_format(type, label, fmt);
                return Reply{200, results_json(session_, type, session_.page(type).results)};
              });
            }));

  http.Post("/page/ignore", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              auto label = label_field(body, "label");
              auto nodes = path_list(body.value("nodes", json::array()));
              return run([this, body, label, nodes] {
                auto type = target_page(body);
                auto results = session_.correct_labels(type, IgnoreNodes{label, nodes});
                return Reply{200, results_json(session_, type, results)};
              });
            }));

  http.Post("/page/retrain", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              if (!body.contains("labels") || !body["labels"].is_array()) invalid("missing array field 'labels'");
              RetrainLabels retrain;
              for (const auto& v : body["labels"]) {
                auto label = v.is_string() ? label_from_string(v.get<std::string>()) : std::nullopt;
                if (!label) invalid("unknown label " + v.dump());
                retrain.labels.insert(*label);
              }
              return run([this, body, retrain] {
                auto type = target_page(body);
                auto results = session_.correct_labels(type, retrain);
                return Reply{200, results_json(session_, type, results)};
              });
            }));

  http.Post("/page/manual-xpath", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              auto label = label_field(body, "label");
              if (!body.contains("expr") || !body["expr"].is_string()) invalid("missing string field 'expr'");
              auto expr = body["expr"].get<std::string>();
              return run([this, body, label, expr] {
                auto type = target_page(body);
                session_.submit_manual_xpath(type, label, expr);
                return Reply{200, results_json(session_, type, session_.page(type).results)};
              });
            }));

  http.Post("/page/script", guarded([this, activity](const httplib::Request& req) {
              auto body = parse_body(req);
              if (!body.contains("source") || !body["source"].is_string()) invalid("missing string field 'source'");
              auto source = body["source"].get<std::string>();
              bool dry_run = body.value("dry_run", false);
              return run([this, body, source, dry_run, activity] {
                auto type = target_page(body);
                activity("running script on " + std::string(to_string(type)));
                const auto& p = session_.attach_script(type, source, !dry_run);
                auto out = page_record_to_json(p, true);
                out["dry_run"] = dry_run;
                return Reply{200, out};
              });
            }));

  http.Post("/page/confirm", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              auto type = std::make_shared<PageType>();
              auto precheck = [&] {
                *type = target_page(body);
                const auto& p = session_.page(*type);
                if (p.state != PageState::Verifying)
                  throw Error(ErrorCode::WrongPageState,
                              std::string(to_string(*type)) + " page is " + std::string(to_string(p.state)));
                last_gate_ = nullptr;
                last_error_ = nullptr;
                activity_ = "stability check on " + std::string(to_string(*type));
              };
              return launch(
                  [this, type] {
                    auto gate = session_.confirm(*type);
                    json summary = {{"type", to_string(*type)},
                                    {"passed", gate.passed},
                                    {"rounds", gate.rounds},
                                    {"notes", gate.notes},
                                    {"state", to_string(session_.page(*type).state)}};
                    std::lock_guard lock(mu_);
                    last_gate_ = summary;
                    return Reply{};
                  },
                  precheck);
            }));

  http.Post("/page/reset", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              return run([this, body] {
                auto type = target_page(body);
                session_.correct_labels(type, ResetPage{});
                return Reply{200, page_record_to_json(session_.page(type), false)};
              });
            }));

  http.Post("/prompt/answer", guarded([this](const httplib::Request& req) {
              auto body = parse_body(req);
              if (!body.contains("answer") || !body["answer"].is_string()) invalid("missing string field 'answer'");
              std::optional<std::uint64_t> id;
              if (body.contains("id")) {
                if (!body["id"].is_number_unsigned()) invalid("'id' must be a prompt id");
                id = body["id"].get<std::uint64_t>();
              }
              if (!prompts_.answer(id, body["answer"].get<std::string>()))
                return Reply{409, error_body("NoPendingPrompt", "no matching prompt is waiting")};
              return Reply{200, {{"accepted", true}}};
            }));

  http.Get("/resolve", guarded([this](const httplib::Request& req) {
             if (!req.has_param("expr")) invalid("missing query parameter 'expr'");
             auto expr = XPathExpr::parse(req.get_param_value("expr"));
             json sel = json::object();
             if (req.has_param("type")) sel["type"] = req.get_param_value("type");
             return run([this, sel, expr] {
               auto type = target_page(sel);
               const auto& p = session_.page(type);
               if (!p.snapshot) throw Error(ErrorCode::WrongPageState, std::string(to_string(type)) + " page is not loaded");
               json paths = json::array();
               for (const auto& n : resolve(*p.snapshot, Locator{expr, Strategy::Manual, {}, {}}))
                 paths.push_back(absolute_path(*p.snapshot, n).to_string());
               return Reply{200, {{"type", to_string(type)}, {"expr", expr.source()}, {"count", paths.size()}, {"matches", paths}}};
             });
           }));

  http.Post("/tickets", guarded([this](const httplib::Request& req) {
              json doc = json::parse(req.body, nullptr, false);
              TicketBundle bundle;
              if (!doc.is_discarded() && doc.is_object() && doc.contains("bundle"))
                bundle = parse_ticket_bundle(doc["bundle"].is_string() ? doc["bundle"].get<std::string>() : doc["bundle"].dump());
              else
                bundle = parse_ticket_bundle(req.body);
              if (bundle.pairs.empty()) invalid("the ticket bundle is empty");
              return run([this, bundle] {
                if (store_) store_->save_tickets(bundle);
                if (adapter_) adapter_->inject_tickets(bundle);
                return Reply{200, {{"pairs", bundle.pairs.size()}, {"stored", store_ != nullptr}}};
              });
            }));

  http.Post("/session/finalize", guarded([this](const httplib::Request&) {
              return run([this] {
                auto profile = session_.finalize_profile();
                std::lock_guard lock(mu_);
                finalized_ = profile;
                cv_.notify_all();
                return Reply{200, profile_to_json(profile)};
              });
            }));
}

}  // namespace forumcrawl

#include "forumcrawl/records.hpp"

#include <sstream>

#include "forumcrawl/error.hpp"
#include "forumcrawl/timefmt.hpp"

namespace forumcrawl {

using nlohmann::json;

namespace {

json date_to_json(const std::optional<ParsedDate>& d) {
  if (!d) return nullptr;
  return {{"raw", d->raw},
          {"value", d->value ? json(format_timestamp(*d->value)) : json(nullptr)},
          {"parse_ok", d->parse_ok}};
}

std::optional<ParsedDate> date_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  ParsedDate d;
  d.raw = j.at("raw").get<std::string>();
  d.parse_ok = j.at("parse_ok").get<bool>();
  if (!j.at("value").is_null()) {
    d.value = parse_timestamp(j.at("value").get<std::string>());
    if (!d.value) throw Error(ErrorCode::InvalidDocument, "bad date value in record");
  }
  return d;
}

SysTime required_time(const json& j, const char* key) {
  auto t = parse_timestamp(j.at(key).get<std::string>());
  if (!t) throw Error(ErrorCode::InvalidDocument, std::string("bad timestamp in field ") + key);
  return *t;
}

}  // namespace

json record_to_json(const PostRecord& r) {
  return {
      {"forum_id", r.forum_id},
      {"section_path", r.section_path},
      {"thread_title", r.thread_title},
      {"thread_url", r.thread_url},
      {"page_number", r.page_number},
      {"ordinal", r.ordinal},
      {"author_name", r.author_name},
      {"author_post_count", r.author_post_count ? json(*r.author_post_count) : json(nullptr)},
      {"author_popularity", r.author_popularity ? json(*r.author_popularity) : json(nullptr)},
      {"author_registration_date", date_to_json(r.author_registration_date)},
      {"post_date", date_to_json(r.post_date)},
      {"content_text", r.content_text},
      {"content_html", r.content_html},
      {"retrieved_at", format_timestamp(r.retrieved_at)},
  };
}

PostRecord record_from_json(const json& j) {
  try {
    PostRecord r;
    r.forum_id = j.at("forum_id").get<std::string>();
    r.section_path = j.at("section_path").get<std::vector<std::string>>();
    r.thread_title = j.at("thread_title").get<std::string>();
    r.thread_url = j.at("thread_url").get<std::string>();
    r.page_number = j.at("page_number").get<int>();
    r.ordinal = j.at("ordinal").get<int>();
    r.author_name = j.at("author_name").get<std::string>();
    if (!j.at("author_post_count").is_null()) r.author_post_count = j.at("author_post_count").get<long long>();
    if (!j.at("author_popularity").is_null()) r.author_popularity = j.at("author_popularity").get<std::string>();
    r.author_registration_date = date_from_json(j.at("author_registration_date"));
    r.post_date = date_from_json(j.at("post_date"));
    r.content_text = j.at("content_text").get<std::string>();
    r.content_html = j.at("content_html").get<std::string>();
    r.retrieved_at = required_time(j, "retrieved_at");
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("record: ") + e.what());
  }
}

json fetch_log_to_json(const FetchLogEntry& e) {
  return {{"url", e.url}, {"at", format_timestamp(e.at)}, {"action", e.action}, {"outcome", e.outcome}};
}

TicketBundle parse_ticket_bundle(std::string_view text) {
  TicketBundle bundle;
  auto add = [&](std::string key, std::string value) {
    if (key.empty()) throw Error(ErrorCode::InvalidDocument, "ticket key must be non-empty");
    bundle.pairs.emplace_back(std::move(key), std::move(value));
  };
  auto value_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  json doc = json::parse(text, nullptr, false);
  if (!doc.is_discarded() && doc.is_object()) {
    for (auto it = doc.begin(); it != doc.end(); ++it) add(it.key(), value_text(it.value()));
    return bundle;
  }
  if (!doc.is_discarded() && doc.is_array()) {
    for (const auto& p : doc) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string())
        throw Error(ErrorCode::InvalidDocument, "ticket array entries must be [key, value]");
      add(p[0].get<std::string>(), value_text(p[1]));
    }
    return bundle;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidDocument, "ticket line " + std::to_string(line_no) + " lacks '='");
    add(line.substr(0, eq), line.substr(eq + 1));
  }
  return bundle;
}

}  // namespace forumcrawl

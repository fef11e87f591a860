#include "forumcrawl/profile.hpp"

#include <fstream>

#include "forumcrawl/error.hpp"
#include "forumcrawl/timefmt.hpp"

namespace forumcrawl {

using nlohmann::json;

const Locator* PageProfile::find(LabelKind label) const {
  auto it = labels.find(label);
  return it == labels.end() ? nullptr : &it->second;
}

const PageProfile* TrainedProfile::page(PageType type) const {
  auto it = pages.find(type);
  return it == pages.end() ? nullptr : &it->second;
}

const Locator* TrainedProfile::locator(PageType type, LabelKind label) const {
  const auto* p = page(type);
  return p ? p->find(label) : nullptr;
}

json locator_to_json(const Locator& l) {
  json out = {{"expr", l.expr.source()},
              {"strategy", std::string(to_string(l.strategy))},
              {"ignore", json(std::vector<std::string>(l.ignore.begin(), l.ignore.end()))}};
  out["date_format"] = l.date_format ? json(*l.date_format) : json(nullptr);
  return out;
}

Locator locator_from_json(const json& j) {
  try {
    Locator l;
    l.expr = XPathExpr::parse(j.at("expr").get<std::string>());
    auto name = j.value("strategy", std::string(to_string(Strategy::Manual)));
    auto strategy = strategy_from_string(name);
    if (!strategy) throw Error(ErrorCode::InvalidDocument, "unknown strategy '" + name + "'");
    l.strategy = *strategy;
    for (const auto& p : j.value("ignore", json::array())) {
      auto path = p.get<std::string>();
      AbsolutePath::parse(path);  // validates
      l.ignore.insert(path);
    }
    if (j.contains("date_format") && !j.at("date_format").is_null())
      l.date_format = j.at("date_format").get<std::string>();
    return l;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("locator: ") + e.what());
  }
}

json profile_to_json(const TrainedProfile& profile) {
  json pages = json::array();
  for (const auto& [type, page] : profile.pages) {
    json labels = json::array();
    for (const auto& [label, locator] : page.labels) {
      json entry = locator_to_json(locator);
      entry["label"] = std::string(to_string(label));
      labels.push_back(std::move(entry));
    }
    pages.push_back({{"page_type", std::string(to_string(type))},
                     {"script", page.script ? json(*page.script) : json(nullptr)},
                     {"labels", labels}});
  }
  return {{"schema_version", kProfileSchemaVersion},
          {"forum_id", profile.forum_id},
          {"created_at", format_timestamp(profile.created_at)},
          {"pages", pages}};
}

TrainedProfile profile_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version") || !doc.at("schema_version").is_number_integer())
    throw Error(ErrorCode::SchemaMismatch, "profile lacks an integer schema_version");
  int version = doc.at("schema_version").get<int>();
  if (version != kProfileSchemaVersion)
    throw Error(ErrorCode::SchemaMismatch, "profile schema_version " + std::to_string(version) + " is not supported");
  try {
    TrainedProfile profile;
    profile.forum_id = doc.at("forum_id").get<std::string>();
    auto created = parse_timestamp(doc.at("created_at").get<std::string>());
    if (!created) throw Error(ErrorCode::InvalidDocument, "profile created_at is not an RFC 3339 UTC timestamp");
    profile.created_at = *created;
    for (const auto& p : doc.at("pages")) {
      auto type_name = p.at("page_type").get<std::string>();
      auto type = page_type_from_string(type_name);
      if (!type) throw Error(ErrorCode::InvalidDocument, "unknown page_type '" + type_name + "'");
      if (profile.pages.count(*type)) throw Error(ErrorCode::InvalidDocument, "duplicate page_type '" + type_name + "'");
      PageProfile page;
      if (p.contains("script") && !p.at("script").is_null()) page.script = p.at("script").get<std::string>();
      for (const auto& l : p.value("labels", json::array())) {
        auto label_name = l.at("label").get<std::string>();
        auto label = label_from_string(label_name);
        if (!label || !label_valid_for(*type, *label))
          throw Error(ErrorCode::InvalidLabelForPage, "label '" + label_name + "' is not valid on " + type_name);
        page.labels[*label] = locator_from_json(l);
      }
      profile.pages[*type] = std::move(page);
    }
    return profile;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, std::string("profile: ") + e.what());
  }
}

void save_profile(const TrainedProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::StoreError, "cannot write " + path.string());
  out << profile_to_json(profile).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::StoreError, "write failed for " + path.string());
}

TrainedProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StoreError, "cannot read " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::InvalidDocument, path.string() + " is not valid JSON");
  return profile_from_json(doc);
}

}  // namespace forumcrawl

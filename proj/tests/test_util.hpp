#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "forumcrawl/dom.hpp"

namespace forumcrawl::test {

// Indented element/text dump used for tree comparisons. Adjacent text is
// merged and whitespace-normalized; whitespace-only runs are dropped.
inline std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void dump_children(const NodeRef& node, int depth, std::string& out) {
  std::string text;
  auto flush = [&] {
    std::string norm = normalize_space(text);
    if (!norm.empty()) out += std::string(depth * 2, ' ') + json_quote(norm) + "\n";
    text.clear();
  };
  for (const auto& child : node.children()) {
    if (child.is_text()) {
      text += child.text();
      continue;
    }
    flush();
    std::string line = std::string(depth * 2, ' ') + child.tag();
    std::vector<Attribute> attrs(child.attributes().begin(), child.attributes().end());
    std::sort(attrs.begin(), attrs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const auto& a : attrs) line += " " + a.name + "=" + json_quote(a.value);
    out += line + "\n";
    dump_children(child, depth + 1, out);
  }
  flush();
}

inline std::string dump_tree(const DomSnapshot& snap) {
  std::string out;
  dump_children(snap.document(), 0, out);
  return out;
}

}  // namespace forumcrawl::test

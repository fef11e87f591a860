#include "forumcrawl/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace forumcrawl {

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

/// RFC 3986 section 5.2.4.
std::string remove_dot_segments(std::string_view input) {
  std::vector<std::string> out;
  bool absolute = !input.empty() && input.front() == '/';
  bool trailing = false;
  std::size_t pos = absolute ? 1 : 0;
  while (pos <= input.size()) {
    auto slash = input.find('/', pos);
    auto seg = input.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    trailing = slash == std::string_view::npos && (seg == "." || seg == "..");
    if (seg == "..") {
      if (!out.empty()) out.pop_back();
    } else if (seg != ".") {
      out.emplace_back(seg);
    }
    if (slash == std::string_view::npos) break;
    pos = slash + 1;
  }
  std::string result = absolute ? "/" : "";
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) result += '/';
    result += out[i];
  }
  if (trailing && (result.empty() || result.back() != '/')) result += '/';
  return result;
}

}  // namespace

Url Url::parse(std::string_view text) {
  Url u;
  if (auto hash = text.find('#'); hash != std::string_view::npos) {
    u.fragment = std::string(text.substr(hash + 1));
    text = text.substr(0, hash);
  }
  if (auto q = text.find('?'); q != std::string_view::npos) {
    u.query = std::string(text.substr(q + 1));
    text = text.substr(0, q);
  }
  auto colon = text.find(':');
  auto first_slash = text.find('/');
  if (colon != std::string_view::npos && colon > 0 && (first_slash == std::string_view::npos || colon < first_slash) &&
      std::isalpha(static_cast<unsigned char>(text[0]))) {
    u.scheme = std::string(text.substr(0, colon));
    std::transform(u.scheme.begin(), u.scheme.end(), u.scheme.begin(), [](unsigned char c) { return std::tolower(c); });
    text = text.substr(colon + 1);
  }
  if (text.substr(0, 2) == "//") {
    text = text.substr(2);
    auto end = text.find('/');
    u.authority = std::string(text.substr(0, end));
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end);
  }
  u.path = std::string(text);
  return u;
}

std::string Url::origin() const { return scheme.empty() ? "//" + authority : scheme + "://" + authority; }

std::string Url::to_string() const {
  std::string s;
  if (!scheme.empty()) s += scheme + ":";
  if (!authority.empty() || scheme == "http" || scheme == "https" || scheme == "file") s += "//" + authority;
  s += path;
  if (query) s += "?" + *query;
  if (fragment) s += "#" + *fragment;
  return s;
}

std::string resolve_url(std::string_view base_text, std::string_view reference) {
  Url r = Url::parse(reference);
  Url b = Url::parse(base_text);
  Url t;
  if (!r.scheme.empty()) {
    t = r;
    t.path = remove_dot_segments(r.path);
    return t.to_string();
  }
  t.scheme = b.scheme;
  if (reference.substr(0, 2) == "//") {
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.query = r.query;
  } else {
    t.authority = b.authority;
    if (r.path.empty()) {
      t.path = b.path;
      t.query = r.query ? r.query : b.query;
    } else {
      if (r.path.front() == '/') {
        t.path = remove_dot_segments(r.path);
      } else {
        std::string merged;
        if (!b.authority.empty() && b.path.empty())
          merged = "/" + r.path;
        else
          merged = b.path.substr(0, b.path.rfind('/') + 1) + r.path;
        t.path = remove_dot_segments(merged);
      }
      t.query = r.query;
    }
  }
  t.fragment = r.fragment;
  if (t.path.empty() && !t.authority.empty()) t.path = "/";
  return t.to_string();
}

std::string canonical_thread_url(std::string_view text) {
  Url u = Url::parse(text);
  u.fragment.reset();
  if (u.query) {
    std::vector<std::string> params;
    std::size_t pos = 0;
    const std::string& q = *u.query;
    while (pos <= q.size()) {
      auto amp = q.find('&', pos);
      std::string p = q.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
      std::string key = p.substr(0, p.find('='));
      if (!p.empty() && key != "page" && key != "p" && key != "start") params.push_back(p);
      if (amp == std::string::npos) break;
      pos = amp + 1;
    }
    std::sort(params.begin(), params.end());
    if (params.empty()) {
      u.query.reset();
    } else {
      std::string joined;
      for (std::size_t i = 0; i < params.size(); ++i) joined += (i ? "&" : "") + params[i];
      u.query = joined;
    }
  }
  // Trailing pagination segment: ".../page-3", ".../page-3/" or ".../page/3".
  std::string& path = u.path;
  std::string trimmed = path;
  bool slash = !trimmed.empty() && trimmed.back() == '/';
  if (slash) trimmed.pop_back();
  auto last = trimmed.rfind('/');
  if (last != std::string::npos) {
    std::string seg = trimmed.substr(last + 1);
    if (seg.rfind("page-", 0) == 0 && is_digits(seg.substr(5))) {
      path = trimmed.substr(0, last + 1);
    } else if (is_digits(seg)) {
      auto prev = trimmed.rfind('/', last - 1);
      if (prev != std::string::npos && last > 0 && trimmed.substr(prev + 1, last - prev - 1) == "page")
        path = trimmed.substr(0, prev + 1);
    }
  }
  return u.to_string();
}

}  // namespace forumcrawl

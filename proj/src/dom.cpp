#include "forumcrawl/dom.hpp"

#include <iconv.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <map>

#include "forumcrawl/error.hpp"
#include "gumbo.h"

namespace forumcrawl {

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string transcode(std::string_view input, const std::string& from_charset) {
  iconv_t cd = iconv_open("UTF-8", from_charset.c_str());
  if (cd == reinterpret_cast<iconv_t>(-1)) return std::string(input);
  std::string out;
  out.resize(input.size() * 4 + 16);
  char* in_ptr = const_cast<char*>(input.data());
  size_t in_left = input.size();
  char* out_ptr = out.data();
  size_t out_left = out.size();
  while (in_left > 0) {
    size_t rc = iconv(cd, &in_ptr, &in_left, &out_ptr, &out_left);
    if (rc == static_cast<size_t>(-1)) {
      if (errno == EILSEQ || errno == EINVAL) {
        // Replace the undecodable byte with U+FFFD and keep going.
        ++in_ptr;
        --in_left;
        if (out_left >= 3) {
          *out_ptr++ = '\xEF';
          *out_ptr++ = '\xBF';
          *out_ptr++ = '\xBD';
          out_left -= 3;
        }
        continue;
      }
      break;
    }
  }
  iconv_close(cd);
  out.resize(out.size() - out_left);
  return out;
}

// Looks for a charset declaration in the first 1024 bytes.
std::string sniff_meta_charset(std::string_view bytes) {
  std::string head = ascii_lower(bytes.substr(0, 1024));
  size_t pos = 0;
  while ((pos = head.find("<meta", pos)) != std::string::npos) {
    size_t end = head.find('>', pos);
    if (end == std::string::npos) break;
    std::string_view tag(head.data() + pos, end - pos);
    size_t cs = tag.find("charset");
    if (cs != std::string_view::npos) {
      size_t i = cs + 7;
      while (i < tag.size() && (is_space(tag[i]) || tag[i] == '=')) ++i;
      while (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) ++i;
      size_t j = i;
      while (j < tag.size() && (std::isalnum(static_cast<unsigned char>(tag[j])) || tag[j] == '-' || tag[j] == '_'))
        ++j;
      if (j > i) return std::string(tag.substr(i, j - i));
    }
    pos = end;
  }
  return {};
}

std::string decode_to_utf8(std::string_view bytes) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") return std::string(bytes.substr(3));
  if (bytes.size() >= 2 && bytes.substr(0, 2) == "\xFF\xFE") return transcode(bytes.substr(2), "UTF-16LE");
  if (bytes.size() >= 2 && bytes.substr(0, 2) == "\xFE\xFF") return transcode(bytes.substr(2), "UTF-16BE");
  std::string charset = sniff_meta_charset(bytes);
  if (charset.empty() || charset == "utf-8" || charset == "utf8" || charset == "us-ascii") return std::string(bytes);
  // Browsers treat latin-1 labels as windows-1252.
  if (charset == "iso-8859-1" || charset == "latin1" || charset == "ascii") charset = "windows-1252";
  return transcode(bytes, charset);
}

std::string element_tag_name(const GumboElement& element) {
  if (element.tag != GUMBO_TAG_UNKNOWN) return ascii_lower(gumbo_normalized_tagname(element.tag));
  GumboStringPiece original = element.original_tag;
  gumbo_tag_from_original_text(&original);
  return ascii_lower(std::string_view(original.data, original.length));
}

class TreeBuilder {
 public:
  explicit TreeBuilder(detail::DomTree& tree) : tree_(tree) {}

  void build(const GumboNode* document) {
    detail::DomNode doc;
    doc.kind = NodeKind::Document;
    tree_.nodes.push_back(std::move(doc));
    const GumboVector& children = document->v.document.children;
    for (unsigned i = 0; i < children.length; ++i) add(static_cast<const GumboNode*>(children.data[i]), 0, 1);
    finish(0);
  }

 private:
  void add(const GumboNode* g, std::uint32_t parent, std::uint32_t depth) {
    switch (g->type) {
      case GUMBO_NODE_ELEMENT:
      case GUMBO_NODE_TEMPLATE: {
        auto index = static_cast<std::uint32_t>(tree_.nodes.size());
        detail::DomNode node;
        node.kind = NodeKind::Element;
        node.tag = element_tag_name(g->v.element);
        node.parent = parent;
        node.depth = depth;
        const GumboVector& attrs = g->v.element.attributes;
        for (unsigned i = 0; i < attrs.length; ++i) {
          auto* a = static_cast<const GumboAttribute*>(attrs.data[i]);
          node.attributes.push_back({ascii_lower(a->name), a->value});
        }
        tree_.nodes.push_back(std::move(node));
        tree_.nodes[parent].children.push_back(index);
        if (parent == 0 && tree_.nodes[index].tag == "html") tree_.root = index;
        const GumboVector& children = g->v.element.children;
        for (unsigned i = 0; i < children.length; ++i)
          add(static_cast<const GumboNode*>(children.data[i]), index, depth + 1);
        finish(index);
        break;
      }
      case GUMBO_NODE_TEXT:
      case GUMBO_NODE_WHITESPACE:
      case GUMBO_NODE_CDATA: {
        auto index = static_cast<std::uint32_t>(tree_.nodes.size());
        detail::DomNode node;
        node.kind = NodeKind::Text;
        node.text = g->v.text.text;
        node.parent = parent;
        node.depth = depth;
        node.subtree_end = index + 1;
        tree_.nodes.push_back(std::move(node));
        tree_.nodes[parent].children.push_back(index);
        break;
      }
      default:
        break;  // comments and the doctype carry no structure we use
    }
  }

  void finish(std::uint32_t index) {
    auto& node = tree_.nodes[index];
    node.subtree_end = static_cast<std::uint32_t>(tree_.nodes.size());
    std::map<std::string, std::uint32_t> per_tag;
    std::uint32_t element_ordinal = 0;
    for (auto child : node.children) {
      auto& c = tree_.nodes[child];
      if (c.kind != NodeKind::Element) continue;
      c.element_index = ++element_ordinal;
      c.same_tag_index = ++per_tag[c.tag];
    }
  }

  detail::DomTree& tree_;
};

bool is_void_element(std::string_view tag) {
  static constexpr std::string_view kVoid[] = {"area", "base", "br",   "col",   "embed",  "hr",    "img",
                                               "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(std::begin(kVoid), std::end(kVoid), tag) != std::end(kVoid);
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "xmp" || tag == "iframe" || tag == "noembed" ||
         tag == "noframes";
}

void escape_into(std::string& out, std::string_view text, bool attribute) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += attribute ? "<" : "&lt;"; break;
      case '>': out += attribute ? ">" : "&gt;"; break;
      case '"': out += attribute ? "&quot;" : "\""; break;
      default: out += c;
    }
  }
}

void serialize(const NodeRef& node, std::string& out) {
  if (node.is_text()) {
    auto parent = node.parent();
    if (parent.valid() && is_raw_text_element(parent.tag()))
      out += node.text();
    else
      escape_into(out, node.text(), false);
    return;
  }
  if (!node.is_element()) {
    for (const auto& child : node.children()) serialize(child, out);
    return;
  }
  out += '<';
  out += node.tag();
  for (const auto& attr : node.attributes()) {
    out += ' ';
    out += attr.name;
    out += "=\"";
    escape_into(out, attr.value, true);
    out += '"';
  }
  out += '>';
  if (is_void_element(node.tag())) return;
  for (const auto& child : node.children()) serialize(child, out);
  out += "</";
  out += node.tag();
  out += '>';
}

void collect_text(const NodeRef& node, std::string& out) {
  if (node.is_text()) {
    out += ' ';
    out += node.text();
    return;
  }
  if (node.is_element() && (node.tag() == "script" || node.tag() == "style" || node.tag() == "template")) return;
  for (const auto& child : node.children()) collect_text(child, out);
}

}  // namespace

std::optional<std::string_view> NodeRef::attribute(std::string_view name) const {
  for (const auto& a : node().attributes)
    if (a.name == name) return std::string_view(a.value);
  return std::nullopt;
}

std::vector<std::string> NodeRef::class_tokens() const {
  std::vector<std::string> tokens;
  auto cls = attribute("class");
  if (!cls) return tokens;
  size_t i = 0;
  while (i < cls->size()) {
    while (i < cls->size() && is_space(static_cast<unsigned char>((*cls)[i]))) ++i;
    size_t j = i;
    while (j < cls->size() && !is_space(static_cast<unsigned char>((*cls)[j]))) ++j;
    if (j > i) {
      std::string token(cls->substr(i, j - i));
      if (std::find(tokens.begin(), tokens.end(), token) == tokens.end()) tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

NodeRef NodeRef::parent() const {
  if (index_ == 0) return {};
  return {tree_, node().parent};
}

std::vector<NodeRef> NodeRef::children() const {
  std::vector<NodeRef> out;
  out.reserve(node().children.size());
  for (auto c : node().children) out.emplace_back(tree_, c);
  return out;
}

std::vector<NodeRef> NodeRef::element_children() const {
  std::vector<NodeRef> out;
  for (auto c : node().children)
    if (tree_->nodes[c].kind == NodeKind::Element) out.emplace_back(tree_, c);
  return out;
}

bool NodeRef::contains(const NodeRef& other) const {
  return other.tree_ == tree_ && other.index_ >= index_ && other.index_ < node().subtree_end;
}

DomSnapshot::DomSnapshot(std::shared_ptr<const detail::DomTree> tree, std::string source_url, std::string raw_bytes,
                         SysTime fetched_at)
    : tree_(std::move(tree)),
      source_url_(std::move(source_url)),
      raw_bytes_(std::move(raw_bytes)),
      fetched_at_(fetched_at) {}

std::vector<NodeRef> DomSnapshot::elements() const {
  std::vector<NodeRef> out;
  if (!tree_) return out;
  for (std::uint32_t i = 0; i < tree_->nodes.size(); ++i)
    if (tree_->nodes[i].kind == NodeKind::Element) out.emplace_back(tree_.get(), i);
  return out;
}

DomSnapshot parse_snapshot(std::string_view html, std::string source_url, SysTime fetched_at) {
  std::string utf8 = decode_to_utf8(html);
  if (utf8.empty()) throw Error(ErrorCode::EmptyInput, "no bytes to parse for " + source_url);

  GumboOutput* output = gumbo_parse_with_options(&kGumboDefaultOptions, utf8.data(), utf8.size());
  auto tree = std::make_shared<detail::DomTree>();
  try {
    TreeBuilder(*tree).build(output->document);
  } catch (...) {
    gumbo_destroy_output(output);
    throw;
  }
  gumbo_destroy_output(output);
  return DomSnapshot(std::move(tree), std::move(source_url), std::string(html), fetched_at);
}

std::string AbsolutePath::to_string() const {
  std::string out;
  for (const auto& step : steps) {
    out += '/';
    out += step.tag;
    out += '[';
    out += std::to_string(step.index);
    out += ']';
  }
  return out;
}

AbsolutePath AbsolutePath::parse(std::string_view text) {
  AbsolutePath path;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::UnsupportedSyntax, "absolute path '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    if (text[i] != '/') fail("expected '/' at offset " + std::to_string(i));
    ++i;
    size_t start = i;
    while (i < text.size() && text[i] != '[' && text[i] != '/') ++i;
    if (i == start) fail("empty step at offset " + std::to_string(start));
    PathStep step;
    step.tag = ascii_lower(text.substr(start, i - start));
    if (i >= text.size() || text[i] != '[') fail("step '" + step.tag + "' has no index");
    ++i;
    size_t close = text.find(']', i);
    if (close == std::string_view::npos) fail("unterminated index");
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + close, step.index);
    if (ec != std::errc() || ptr != text.data() + close || step.index == 0) fail("bad index");
    i = close + 1;
    path.steps.push_back(std::move(step));
  }
  if (path.steps.empty()) fail("empty path");
  return path;
}

AbsolutePath absolute_path(const DomSnapshot& snapshot, const NodeRef& node) {
  if (!snapshot.owns(node) || !node.is_element())
    throw Error(ErrorCode::ForeignNode, "node is not an element of snapshot " + snapshot.source_url());
  AbsolutePath path;
  for (NodeRef n = node; n.valid() && n.is_element(); n = n.parent()) path.steps.push_back({n.tag(), n.same_tag_index()});
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

std::optional<NodeRef> node_at(const DomSnapshot& snapshot, const AbsolutePath& path) {
  if (snapshot.empty()) return std::nullopt;
  NodeRef current = snapshot.document();
  for (const auto& step : path.steps) {
    NodeRef next;
    for (const auto& child : current.element_children()) {
      if (child.tag() == step.tag && child.same_tag_index() == step.index) {
        next = child;
        break;
      }
    }
    if (!next.valid()) return std::nullopt;
    current = next;
  }
  if (!current.is_element()) return std::nullopt;
  return current;
}

std::string normalize_space(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out += ' ';
      pending_space = false;
      out += c;
    }
  }
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = is_space(static_cast<unsigned char>(c));
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

TextContent text_content(const NodeRef& node) {
  std::string raw;
  collect_text(node, raw);
  TextContent result;
  result.text = normalize_space(raw);
  result.word_count = count_words(result.text);
  return result;
}

std::string outer_html(const NodeRef& node) {
  std::string out;
  serialize(node, out);
  return out;
}

bool structurally_equal(const DomSnapshot& a, const DomSnapshot& b) {
  if (a.size() != b.size()) return false;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    NodeRef x = a.node(i);
    NodeRef y = b.node(i);
    if (x.kind() != y.kind() || x.tag() != y.tag() || x.text() != y.text()) return false;
    if (!std::equal(x.attributes().begin(), x.attributes().end(), y.attributes().begin(), y.attributes().end()))
      return false;
    if (x.parent().order() != y.parent().order()) return false;
  }
  return true;
}

}  // namespace forumcrawl

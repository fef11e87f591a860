#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forumcrawl {

using SysTime = std::chrono::system_clock::time_point;

enum class NodeKind : std::uint8_t { Document, Element, Text };

struct Attribute {
  std::string name;
  std::string value;
  bool operator==(const Attribute&) const = default;
};

namespace detail {

// Nodes are stored in pre-order, so the descendants of node i occupy
// the half-open index range (i, subtree_end).
struct DomNode {
  NodeKind kind = NodeKind::Element;
  std::string tag;
  std::string text;
  std::vector<Attribute> attributes;
  std::uint32_t parent = 0;
  std::vector<std::uint32_t> children;
  std::uint32_t same_tag_index = 0;
  std::uint32_t element_index = 0;
  std::uint32_t depth = 0;
  std::uint32_t subtree_end = 0;
};

struct DomTree {
  std::vector<DomNode> nodes;
  std::uint32_t root = 0;
};

}  // namespace detail

/// Lightweight handle to a node of a DomSnapshot. Valid as long as any copy
/// of the owning snapshot is alive.
class NodeRef {
 public:
  NodeRef() = default;
  NodeRef(const detail::DomTree* tree, std::uint32_t index) : tree_(tree), index_(index) {}

  bool valid() const noexcept { return tree_ != nullptr; }
  explicit operator bool() const noexcept { return valid(); }

  NodeKind kind() const { return node().kind; }
  bool is_element() const { return node().kind == NodeKind::Element; }
  bool is_text() const { return node().kind == NodeKind::Text; }

  /// Lowercase tag name; empty for text and document nodes.
  const std::string& tag() const { return node().tag; }
  const std::string& text() const { return node().text; }
  std::span<const Attribute> attributes() const { return node().attributes; }
  std::optional<std::string_view> attribute(std::string_view name) const;
  std::vector<std::string> class_tokens() const;

  /// Parent node; the document node for the root element, invalid for the document.
  NodeRef parent() const;
  std::vector<NodeRef> children() const;
  std::vector<NodeRef> element_children() const;

  /// 1-based ordinal among siblings with the same tag.
  std::uint32_t same_tag_index() const { return node().same_tag_index; }
  /// 1-based ordinal among element siblings.
  std::uint32_t element_index() const { return node().element_index; }
  std::uint32_t depth() const { return node().depth; }
  /// Position in document order.
  std::uint32_t order() const noexcept { return index_; }

  bool contains(const NodeRef& other) const;
  const detail::DomTree* tree() const noexcept { return tree_; }

  friend bool operator==(const NodeRef& a, const NodeRef& b) noexcept {
    return a.tree_ == b.tree_ && a.index_ == b.index_;
  }
  friend auto operator<=>(const NodeRef& a, const NodeRef& b) noexcept {
    if (auto c = std::compare_three_way{}(a.tree_, b.tree_); c != 0) return c;
    return a.index_ <=> b.index_;
  }

 private:
  const detail::DomNode& node() const { return tree_->nodes[index_]; }

  const detail::DomTree* tree_ = nullptr;
  std::uint32_t index_ = 0;
};

/// Immutable parsed page. Copies share the node arena.
class DomSnapshot {
 public:
  DomSnapshot() = default;
  DomSnapshot(std::shared_ptr<const detail::DomTree> tree, std::string source_url, std::string raw_bytes,
              SysTime fetched_at);

  /// The `<html>` element.
  NodeRef root() const { return {tree_.get(), tree_->root}; }
  NodeRef document() const { return {tree_.get(), 0}; }
  NodeRef node(std::uint32_t order) const { return {tree_.get(), order}; }
  std::size_t size() const { return tree_ ? tree_->nodes.size() : 0; }
  bool empty() const { return !tree_; }
  bool owns(const NodeRef& node) const { return node.tree() != nullptr && node.tree() == tree_.get(); }
  std::vector<NodeRef> elements() const;

  const std::string& source_url() const { return source_url_; }
  const std::string& raw_bytes() const { return raw_bytes_; }
  SysTime fetched_at() const { return fetched_at_; }

 private:
  std::shared_ptr<const detail::DomTree> tree_;
  std::string source_url_;
  std::string raw_bytes_;
  SysTime fetched_at_{};
};

/// Parses HTML bytes with standard HTML5 error recovery. The encoding is
/// sniffed from a BOM or a meta charset declaration, defaulting to UTF-8.
/// Throws Error(EmptyInput) when nothing remains after decoding.
DomSnapshot parse_snapshot(std::string_view html, std::string source_url, SysTime fetched_at = {});

struct PathStep {
  std::string tag;
  std::uint32_t index = 1;
  auto operator<=>(const PathStep&) const = default;
};

/// Fully indexed root-to-node path, e.g. `/html[1]/body[1]/div[3]`.
struct AbsolutePath {
  std::vector<PathStep> steps;

  std::string to_string() const;
  /// Parses the serialized form; every step must carry an index.
  static AbsolutePath parse(std::string_view text);
  auto operator<=>(const AbsolutePath&) const = default;
};

AbsolutePath absolute_path(const DomSnapshot& snapshot, const NodeRef& node);
std::optional<NodeRef> node_at(const DomSnapshot& snapshot, const AbsolutePath& path);

struct TextContent {
  std::string text;
  std::size_t word_count = 0;
};

/// Descendant text joined with single spaces and whitespace-normalized.
/// Script and style contents are excluded.
TextContent text_content(const NodeRef& node);

std::string outer_html(const NodeRef& node);

/// Same shape, tags, attributes and text in the same order.
bool structurally_equal(const DomSnapshot& a, const DomSnapshot& b);

std::size_t count_words(std::string_view text);
std::string normalize_space(std::string_view text);

}  // namespace forumcrawl

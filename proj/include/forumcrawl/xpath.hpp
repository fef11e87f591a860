#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "forumcrawl/dom.hpp"

namespace forumcrawl {

// Supported subset:
//   expr      := path ('|' path)*
//   path      := ('/' | '//') step (('/' | '//') step)*
//   step      := (name | '*') predicate*
//   predicate := '[' k ']'
//              | '[' '@' name '=' literal ']'
//              | '[' 'contains(' '@' name ',' literal ')' ']'
//              | '[' "contains(concat(' ',normalize-space(@class),' '),' token ')" ']'
// Anything else is rejected with Error(UnsupportedSyntax).

struct XPathPredicate {
  enum class Kind { Position, AttributeEquals, AttributeContains, ClassToken };
  Kind kind = Kind::Position;
  std::string name;
  std::string value;
  std::uint32_t position = 0;

  bool operator==(const XPathPredicate&) const = default;
};

struct XPathStep {
  bool descendant = false;  // preceded by '//'
  std::string name_test;    // lowercase tag or "*"
  std::vector<XPathPredicate> predicates;

  bool operator==(const XPathStep&) const = default;
};

struct XPathPath {
  std::vector<XPathStep> steps;
  bool operator==(const XPathPath&) const = default;
};

class XPathExpr {
 public:
  XPathExpr() = default;

  /// Throws Error(UnsupportedSyntax) naming the offending token.
  static XPathExpr parse(std::string_view text);
  static XPathExpr from_paths(std::vector<XPathPath> branches);

  const std::vector<XPathPath>& branches() const { return branches_; }
  /// Text as written by the caller (canonical text for built expressions).
  const std::string& source() const { return source_; }
  /// Canonical serialization (single-quoted literals where possible).
  std::string canonical() const;

  bool operator==(const XPathExpr& other) const { return branches_ == other.branches_; }

 private:
  std::vector<XPathPath> branches_;
  std::string source_;
};

/// Returns matches in document order without duplicates.
std::vector<NodeRef> evaluate_xpath(const DomSnapshot& snapshot, const XPathExpr& expr);
std::vector<NodeRef> evaluate_xpath(const DomSnapshot& snapshot, std::string_view expr);

/// Quotes a literal for use in an expression; returns empty when the value
/// holds both quote characters (not expressible without concat()).
std::string quote_literal(std::string_view value);
std::string class_token_predicate(std::string_view token);
std::string serialize_step(const XPathStep& step);
std::string serialize_path(const XPathPath& path);

}  // namespace forumcrawl

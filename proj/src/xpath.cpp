#include "forumcrawl/xpath.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "forumcrawl/error.hpp"

namespace forumcrawl {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<XPathPath> parse() {
    std::vector<XPathPath> branches;
    skip_ws();
    branches.push_back(parse_path());
    skip_ws();
    while (peek() == '|') {
      ++pos_;
      skip_ws();
      branches.push_back(parse_path());
      skip_ws();
    }
    if (pos_ != text_.size()) unsupported();
    return branches;
  }

 private:
  char peek(size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void unsupported() const {
    if (pos_ >= text_.size())
      throw Error(ErrorCode::UnsupportedSyntax, "unexpected end of expression '" + std::string(text_) + "'");
    size_t end = pos_ + 1;
    if (is_name_char(text_[pos_])) {
      while (end < text_.size() && is_name_char(text_[end])) ++end;
      if (end < text_.size() && text_[end] == '(') {
        ++end;
        if (end < text_.size() && text_[end] == ')') ++end;
      }
    } else if (text_[pos_] == '.' && end < text_.size() && text_[end] == '.') {
      ++end;
    }
    throw Error(ErrorCode::UnsupportedSyntax, "unsupported token '" + std::string(text_.substr(pos_, end - pos_)) +
                                                  "' at offset " + std::to_string(pos_) + " in '" +
                                                  std::string(text_) + "'");
  }

  void expect(std::string_view literal) {
    skip_ws();
    if (text_.substr(pos_, literal.size()) != literal) unsupported();
    pos_ += literal.size();
  }

  bool accept(std::string_view literal) {
    skip_ws();
    if (text_.substr(pos_, literal.size()) != literal) return false;
    pos_ += literal.size();
    return true;
  }

  std::string parse_name() {
    skip_ws();
    if (!is_name_start(peek())) unsupported();
    size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    return name;
  }

  std::string parse_literal() {
    skip_ws();
    char quote = peek();
    if (quote != '\'' && quote != '"') unsupported();
    size_t close = text_.find(quote, pos_ + 1);
    if (close == std::string_view::npos) unsupported();
    std::string value(text_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return value;
  }

  XPathPath parse_path() {
    XPathPath path;
    if (peek() != '/') unsupported();
    while (peek() == '/') {
      XPathStep step;
      ++pos_;
      if (peek() == '/') {
        step.descendant = true;
        ++pos_;
      }
      if (peek() == '*') {
        step.name_test = "*";
        ++pos_;
      } else {
        if (!is_name_start(peek())) unsupported();
        step.name_test = parse_name();
        if (peek() == '(' || peek() == ':') {
          pos_ -= step.name_test.size();
          unsupported();
        }
      }
      while (true) {
        skip_ws();
        if (peek() != '[') break;
        ++pos_;
        step.predicates.push_back(parse_predicate());
        expect("]");
      }
      path.steps.push_back(std::move(step));
      skip_ws();
    }
    return path;
  }

  XPathPredicate parse_predicate() {
    skip_ws();
    XPathPredicate pred;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, pred.position);
      if (ec != std::errc() || pred.position == 0) {
        pos_ = start;
        unsupported();
      }
      pred.kind = XPathPredicate::Kind::Position;
      return pred;
    }
    if (peek() == '@') {
      ++pos_;
      pred.name = parse_name();
      expect("=");
      pred.value = parse_literal();
      pred.kind = XPathPredicate::Kind::AttributeEquals;
      return pred;
    }
    size_t start = pos_;
    if (accept("contains")) {
      expect("(");
      skip_ws();
      if (peek() == '@') {
        ++pos_;
        pred.name = parse_name();
        expect(",");
        pred.value = parse_literal();
        expect(")");
        pred.kind = XPathPredicate::Kind::AttributeContains;
        return pred;
      }
      if (accept("concat")) {
        expect("(");
        if (parse_literal() != " ") unsupported();
        expect(",");
        expect("normalize-space");
        expect("(");
        expect("@");
        if (parse_name() != "class") unsupported();
        expect(")");
        expect(",");
        if (parse_literal() != " ") unsupported();
        expect(")");
        expect(",");
        std::string token = parse_literal();
        if (token.size() < 3 || token.front() != ' ' || token.back() != ' ') unsupported();
        token = token.substr(1, token.size() - 2);
        if (token.find(' ') != std::string::npos) unsupported();
        expect(")");
        pred.kind = XPathPredicate::Kind::ClassToken;
        pred.name = "class";
        pred.value = token;
        return pred;
      }
      unsupported();
    }
    pos_ = start;
    unsupported();
  }

  std::string_view text_;
  size_t pos_ = 0;
};

bool has_class_token(const NodeRef& node, std::string_view token) {
  auto cls = node.attribute("class");
  if (!cls) return false;
  size_t i = 0;
  while (i < cls->size()) {
    while (i < cls->size() && std::isspace(static_cast<unsigned char>((*cls)[i]))) ++i;
    size_t j = i;
    while (j < cls->size() && !std::isspace(static_cast<unsigned char>((*cls)[j]))) ++j;
    if (j > i && cls->substr(i, j - i) == token) return true;
    i = j;
  }
  return false;
}

bool predicate_holds(const XPathPredicate& pred, const NodeRef& node) {
  switch (pred.kind) {
    case XPathPredicate::Kind::AttributeEquals: {
      auto v = node.attribute(pred.name);
      return v && *v == pred.value;
    }
    case XPathPredicate::Kind::AttributeContains: {
      auto v = node.attribute(pred.name);
      return v && v->find(pred.value) != std::string_view::npos;
    }
    case XPathPredicate::Kind::ClassToken:
      return has_class_token(node, pred.value);
    case XPathPredicate::Kind::Position:
      break;
  }
  return false;
}

// Applies one step to a single parent: child axis, name test, then the
// predicates in order (positions are relative to the list filtered so far).
void apply_step(const XPathStep& step, const NodeRef& parent, std::vector<char>& marks) {
  std::vector<NodeRef> list;
  for (const auto& child : parent.element_children())
    if (step.name_test == "*" || child.tag() == step.name_test) list.push_back(child);
  for (const auto& pred : step.predicates) {
    if (list.empty()) break;
    if (pred.kind == XPathPredicate::Kind::Position) {
      if (pred.position <= list.size()) {
        NodeRef keep = list[pred.position - 1];
        list.assign(1, keep);
      } else {
        list.clear();
      }
    } else {
      std::erase_if(list, [&](const NodeRef& n) { return !predicate_holds(pred, n); });
    }
  }
  for (const auto& n : list) marks[n.order()] = 1;
}

void evaluate_path(const DomSnapshot& snapshot, const XPathPath& path, std::vector<char>& out_marks) {
  const std::size_t n = snapshot.size();
  std::vector<std::uint32_t> context{0};
  for (const auto& step : path.steps) {
    std::vector<char> marks(n, 0);
    if (step.descendant) {
      std::vector<char> parent_seen(n, 0);
      for (auto ctx : context) {
        NodeRef c = snapshot.node(ctx);
        // descendant-or-self, restricted to nodes that can have element children
        for (std::uint32_t i = ctx; i < n && (i == ctx || c.contains(snapshot.node(i))); ++i) {
          if (parent_seen[i]) continue;
          NodeRef p = snapshot.node(i);
          if (p.is_text()) continue;
          parent_seen[i] = 1;
          apply_step(step, p, marks);
        }
      }
    } else {
      for (auto ctx : context) apply_step(step, snapshot.node(ctx), marks);
    }
    context.clear();
    for (std::uint32_t i = 0; i < n; ++i)
      if (marks[i]) context.push_back(i);
    if (context.empty()) return;
  }
  for (auto i : context) out_marks[i] = 1;
}

}  // namespace

XPathExpr XPathExpr::parse(std::string_view text) {
  XPathExpr expr;
  expr.branches_ = Parser(text).parse();
  expr.source_ = std::string(text);
  return expr;
}

XPathExpr XPathExpr::from_paths(std::vector<XPathPath> branches) {
  XPathExpr expr;
  expr.branches_ = std::move(branches);
  expr.source_ = expr.canonical();
  return expr;
}

std::string quote_literal(std::string_view value) {
  if (value.find('\'') == std::string_view::npos) return "'" + std::string(value) + "'";
  if (value.find('"') == std::string_view::npos) return "\"" + std::string(value) + "\"";
  return {};
}

std::string class_token_predicate(std::string_view token) {
  return "contains(concat(' ',normalize-space(@class),' '),' " + std::string(token) + " ')";
}

std::string serialize_step(const XPathStep& step) {
  std::string out = step.descendant ? "//" : "/";
  out += step.name_test;
  for (const auto& pred : step.predicates) {
    out += '[';
    switch (pred.kind) {
      case XPathPredicate::Kind::Position: out += std::to_string(pred.position); break;
      case XPathPredicate::Kind::AttributeEquals: out += "@" + pred.name + "=" + quote_literal(pred.value); break;
      case XPathPredicate::Kind::AttributeContains:
        out += "contains(@" + pred.name + "," + quote_literal(pred.value) + ")";
        break;
      case XPathPredicate::Kind::ClassToken: out += class_token_predicate(pred.value); break;
    }
    out += ']';
  }
  return out;
}

std::string serialize_path(const XPathPath& path) {
  std::string out;
  for (const auto& step : path.steps) out += serialize_step(step);
  return out;
}

std::string XPathExpr::canonical() const {
  std::string out;
  for (size_t i = 0; i < branches_.size(); ++i) {
    if (i) out += " | ";
    out += serialize_path(branches_[i]);
  }
  return out;
}

std::vector<NodeRef> evaluate_xpath(const DomSnapshot& snapshot, const XPathExpr& expr) {
  std::vector<NodeRef> result;
  if (snapshot.empty()) return result;
  std::vector<char> marks(snapshot.size(), 0);
  for (const auto& branch : expr.branches()) evaluate_path(snapshot, branch, marks);
  for (std::uint32_t i = 0; i < marks.size(); ++i)
    if (marks[i]) result.push_back(snapshot.node(i));
  return result;
}

std::vector<NodeRef> evaluate_xpath(const DomSnapshot& snapshot, std::string_view expr) {
  return evaluate_xpath(snapshot, XPathExpr::parse(expr));
}

}  // namespace forumcrawl

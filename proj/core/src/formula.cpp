#include "polyframe/formula.hpp"

#include <cctype>

namespace polyframe {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return s != "true" && s != "false";
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw PreconditionError("invalid atom name '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), nullptr, nullptr}));
}

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Top, {}, nullptr, nullptr}));
  return f;
}

Formula Formula::bot() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Bot, {}, nullptr, nullptr}));
  return f;
}

Formula Formula::binary(Kind kind, Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, std::make_shared<const Formula>(std::move(a)), std::make_shared<const Formula>(std::move(b))}));
}

Formula Formula::conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }

const Formula& Formula::left() const {
  if (!node_->lhs) throw PreconditionError("formula has no left operand");
  return *node_->lhs;
}

const Formula& Formula::right() const {
  if (!node_->rhs) throw PreconditionError("formula has no right operand");
  return *node_->rhs;
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    if (f.kind() == Kind::Atom) {
      out.insert(f.name());
    } else if (f.node_->lhs) {
      self(self, *f.node_->lhs);
      self(self, *f.node_->rhs);
    }
  };
  walk(walk, *this);
  return out;
}

std::size_t Formula::size() const {
  if (!node_->lhs) return 1;
  return 1 + node_->lhs->size() + node_->rhs->size();
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom:
      return a.name() == b.name();
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return true;
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = implication();
    skip();
    if (pos_ != text_.size()) fail({"->", "|", "&", "end of input"});
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) list += (i ? ", " : "") + expected[i];
    throw ParseError("unexpected " + found + " at offset " + std::to_string(pos_) + ", expected one of: " + list,
                     pos_, std::move(expected));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = negation();
    while (accept("&")) f = Formula::conj(std::move(f), negation());
    return f;
  }

  Formula negation() {
    if (accept("~")) return Formula::negation(negation());
    return primary();
  }

  Formula primary() {
    skip();
    if (accept("(")) {
      Formula f = implication();
      if (!accept(")")) fail({")", "->", "|", "&"});
      return f;
    }
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto word = text_.substr(start, pos_ - start);
      if (word == "true") return Formula::top();
      if (word == "false") return Formula::bot();
      return Formula::atom(std::string(word));
    }
    fail({"identifier", "true", "false", "(", "~"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Binding strength of the outermost connective of f.
int level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return f.is_negation() ? 4 : 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    default:
      return 5;
  }
}

void render(const Formula& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      break;
    case Formula::Kind::Top:
      out += "true";
      break;
    case Formula::Kind::Bot:
      out += "false";
      break;
    case Formula::Kind::And:
      render(f.left(), 3, out);
      out += " & ";
      render(f.right(), 4, out);
      break;
    case Formula::Kind::Or:
      render(f.left(), 2, out);
      out += " | ";
      render(f.right(), 3, out);
      break;
    case Formula::Kind::Implies:
      if (f.is_negation()) {
        out += '~';
        render(f.left(), 4, out);
      } else {
        render(f.left(), 2, out);
        out += " -> ";
        render(f.right(), 1, out);
      }
      break;
  }
  if (parens) out += ')';
}

void render_full(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Top:
      out += "true";
      return;
    case Formula::Kind::Bot:
      out += "false";
      return;
    default:
      break;
  }
  if (f.is_negation()) {
    out += '~';
    render_full(f.left(), out);
    return;
  }
  const char* op = f.kind() == Formula::Kind::And ? " & " : f.kind() == Formula::Kind::Or ? " | " : " -> ";
  out += '(';
  render_full(f.left(), out);
  out += op;
  render_full(f.right(), out);
  out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string to_string_full(const Formula& f) {
  std::string out;
  render_full(f, out);
  return out;
}

Formula bounded_depth_formula(int n) {
  if (n < 1) throw PreconditionError("bounded depth formula needs n >= 1");
  Formula p1 = Formula::atom("p1");
  Formula f = Formula::disj(p1, Formula::negation(p1));
  for (int k = 2; k <= n; ++k) {
    Formula p = Formula::atom("p" + std::to_string(k));
    f = Formula::disj(p, Formula::implies(p, f));
  }
  return f;
}

}  // namespace polyframe

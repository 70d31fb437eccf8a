#pragma once

#include "polyframe/error.hpp"

#include <concepts>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace polyframe {

/// Intuitionistic propositional formula. Immutable; copies share structure.
///
/// Negation is not a node: `~a` is `a -> false`.
class Formula {
 public:
  enum class Kind { Atom, Top, Bot, And, Or, Implies };

  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula negation(Formula a) { return implies(std::move(a), bot()); }

  Kind kind() const noexcept { return node_->kind; }
  /// Atom name; empty for non-atoms.
  const std::string& name() const noexcept { return node_->name; }
  const Formula& left() const;
  const Formula& right() const;

  bool is_negation() const noexcept {
    return kind() == Kind::Implies && node_->rhs->kind() == Kind::Bot;
  }

  std::set<std::string> atoms() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Kind kind, Formula a, Formula b);

  std::shared_ptr<const Node> node_;
};

/// Grammar (lowest to highest precedence):
///   formula := implies ; implies := or ("->" implies)? ;
///   or := and ("|" and)* ; and := not ("&" not)* ;
///   not := "~" not | atom ; atom := IDENT | "true" | "false" | "(" formula ")"
/// Throws ParseError with the offending offset and the expected tokens.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering; parse_formula(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Rendering with every binary connective parenthesised.
std::string to_string_full(const Formula& f);

template <class A>
concept HeytingAlgebra = requires(const A& alg, const typename A::value_type& x) {
  { alg.top() } -> std::convertible_to<typename A::value_type>;
  { alg.bottom() } -> std::convertible_to<typename A::value_type>;
  { alg.meet(x, x) } -> std::convertible_to<typename A::value_type>;
  { alg.join(x, x) } -> std::convertible_to<typename A::value_type>;
  { alg.implies(x, x) } -> std::convertible_to<typename A::value_type>;
};

template <class T>
using Valuation = std::map<std::string, T, std::less<>>;

/// Bottom-up evaluation of `f` in `alg`. Throws EvalError for unbound atoms.
template <HeytingAlgebra A>
typename A::value_type eval(const Formula& f, const A& alg,
                            const Valuation<typename A::value_type>& valuation) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto it = valuation.find(f.name());
      if (it == valuation.end()) throw EvalError("unbound atom '" + f.name() + "'");
      return it->second;
    }
    case Formula::Kind::Top:
      return alg.top();
    case Formula::Kind::Bot:
      return alg.bottom();
    case Formula::Kind::And:
      return alg.meet(eval(f.left(), alg, valuation), eval(f.right(), alg, valuation));
    case Formula::Kind::Or:
      return alg.join(eval(f.left(), alg, valuation), eval(f.right(), alg, valuation));
    case Formula::Kind::Implies:
      return alg.implies(eval(f.left(), alg, valuation), eval(f.right(), alg, valuation));
  }
  throw EvalError("corrupt formula node");
}

/// bd_1 = p1 | ~p1, bd_{k+1} = p_{k+1} | (p_{k+1} -> bd_k).
/// bd_n counts points on a chain: F validates bd_{n+1} iff height(F) <= n.
Formula bounded_depth_formula(int n);

}  // namespace polyframe

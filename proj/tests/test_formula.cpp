#include "support/oracles.hpp"

#include <polyframe/error.hpp>
#include <polyframe/formula.hpp>
#include <polyframe/frames.hpp>

#include <gtest/gtest.h>

using namespace polyframe;

TEST(Parse, IdentityImplication) {
  auto f = parse_formula("p -> p");
  EXPECT_EQ(f, Formula::implies(Formula::atom("p"), Formula::atom("p")));
}

TEST(Parse, DoubleNegationIsSugar) {
  auto p = Formula::atom("p");
  auto expected = Formula::implies(Formula::implies(Formula::implies(p, Formula::bot()), Formula::bot()), p);
  EXPECT_EQ(parse_formula("~~p -> p"), expected);
}

TEST(Parse, DisjunctionBindsTighterThanImplication) {
  auto f = parse_formula("p | q -> r");
  EXPECT_EQ(f, Formula::implies(Formula::disj(Formula::atom("p"), Formula::atom("q")), Formula::atom("r")));
  EXPECT_EQ(to_string_full(f), "((p | q) -> r)");
  EXPECT_EQ(parse_formula(to_string_full(f)), f);
}

TEST(Parse, ImplicationIsRightAssociative) {
  auto f = parse_formula("a -> b -> c");
  EXPECT_EQ(f, Formula::implies(Formula::atom("a"), Formula::implies(Formula::atom("b"), Formula::atom("c"))));
}

TEST(Parse, ConstantsAndParentheses) {
  EXPECT_EQ(parse_formula("true").kind(), Formula::Kind::Top);
  EXPECT_EQ(parse_formula("(false)").kind(), Formula::Kind::Bot);
  EXPECT_EQ(parse_formula("(p & q) & r"),
            Formula::conj(Formula::conj(Formula::atom("p"), Formula::atom("q")), Formula::atom("r")));
}

TEST(Parse, ErrorsCarryPositionAndExpectation) {
  try {
    parse_formula("p & -> q");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_formula(""), ParseError);
  EXPECT_THROW(parse_formula("(p"), ParseError);
  EXPECT_THROW(parse_formula("p q"), ParseError);
  EXPECT_THROW(parse_formula("p $ q"), ParseError);
}

TEST(Render, RoundTripsMinimalParentheses) {
  for (const char* text : {"p", "~p", "~~p -> p", "(p -> q) -> p", "p -> q -> r", "p & (q | r)",
                           "(p | q) & r", "~(p & q)", "((p -> q) -> p) -> p", "p | q | r", "p & q & r",
                           "p | (q | r)", "true -> false", "~(p -> q)"}) {
    auto f = parse_formula(text);
    EXPECT_EQ(parse_formula(to_string(f)), f) << text;
    EXPECT_EQ(parse_formula(to_string_full(f)), f) << text;
  }
  EXPECT_EQ(to_string(parse_formula("((p -> q) -> p) -> p")), "((p -> q) -> p) -> p");
  EXPECT_EQ(to_string(parse_formula("p -> (q -> r)")), "p -> q -> r");
  EXPECT_EQ(to_string(parse_formula("(p | q) | r")), "p | q | r");
}

TEST(Formula, AtomsAndSize) {
  auto f = parse_formula("(p -> q) & (q | r)");
  EXPECT_EQ(f.atoms(), (std::set<std::string>{"p", "q", "r"}));
  EXPECT_EQ(f.size(), 7u);
  EXPECT_THROW(Formula::atom("true"), PreconditionError);
  EXPECT_THROW(Formula::atom("1p"), PreconditionError);
}

TEST(Eval, TopIsTheUnit) {
  auto alg = up_algebra(builtin_frame("2-chain"));
  EXPECT_EQ(eval(Formula::top(), alg, {}), alg.top());
}

TEST(Eval, IdentityLawOnTwoChain) {
  Poset chain = builtin_frame("2-chain");
  auto alg = up_algebra(chain);
  ElementSet top_only = chain.set_of({chain.at("c1")});
  EXPECT_EQ(eval(parse_formula("p -> p"), alg, {{"p", top_only}}), alg.top());
}

TEST(Eval, DoubleNegationOnTwoChain) {
  Poset chain = builtin_frame("2-chain");
  auto alg = up_algebra(chain);
  ElementSet top_only = chain.set_of({chain.at("c1")});
  EXPECT_EQ(eval(parse_formula("~~p -> p"), alg, {{"p", top_only}}), top_only);
}

TEST(Eval, UnboundAtomThrows) {
  auto alg = up_algebra(builtin_frame("point"));
  EXPECT_THROW(eval(parse_formula("p & q"), alg, {{"p", alg.top()}}), EvalError);
}

TEST(Eval, ImplicationMatchesForcingOracle) {
  // Upset implication against the pointwise Kripke clause on every pair of upsets.
  Poset scott = builtin_frame("scott");
  auto alg = up_algebra(scott);
  auto rel = oracle::Rel::of(scott);
  auto f = parse_formula("p -> q");
  for (const auto& u : alg.carrier()) {
    for (const auto& v : alg.carrier()) {
      auto got = alg.implies(u, v);
      oracle::Mask mu = 0, mv = 0;
      for (auto x : members(u)) mu |= oracle::Mask{1} << x;
      for (auto x : members(v)) mv |= oracle::Mask{1} << x;
      for (int x = 0; x < rel.n; ++x) {
        EXPECT_EQ(got.test(static_cast<std::size_t>(x)), oracle::forces(rel, f, {{"p", mu}, {"q", mv}}, x));
      }
    }
  }
}

TEST(BoundedDepth, Schema) {
  EXPECT_EQ(to_string(bounded_depth_formula(1)), "p1 | ~p1");
  EXPECT_EQ(to_string(bounded_depth_formula(2)), "p2 | (p2 -> p1 | ~p1)");
  EXPECT_THROW(bounded_depth_formula(0), PreconditionError);
}

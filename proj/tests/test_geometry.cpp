#include <polyframe/error.hpp>
#include <polyframe/geometry.hpp>
#include <polyframe/linalg.hpp>
#include <polyframe/lp.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace polyframe;

namespace {

Point pt(std::initializer_list<int> xs) {
  Point p;
  for (int x : xs) p.emplace_back(x);
  return p;
}

Rational q(int n, int d = 1) { return Rational(n, d); }

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(parse_rational("+2/-4"), q(-1, 2));
  EXPECT_EQ(format_rational(q(-3, 9)), "-1/3");
  EXPECT_EQ(format_rational(q(8, 4)), "2");
  EXPECT_THROW(parse_rational("1/0"), FormatError);
  EXPECT_THROW(parse_rational("0.5"), FormatError);
  EXPECT_THROW(parse_rational(""), FormatError);
  EXPECT_THROW(parse_rational("1/"), FormatError);
}

TEST(Rational, DecimalIsPresentationOnly) {
  EXPECT_EQ(format_decimal(q(2, 3), 3), "0.667");
  EXPECT_EQ(format_decimal(q(-1, 8), 2), "-0.13");
  EXPECT_EQ(format_decimal(q(-1, 1000), 2), "0.00");
  EXPECT_EQ(format_decimal(q(7), 0), "7");
}

TEST(Linalg, RankSolveAndAffineRank) {
  Matrix m{pt({1, 2, 3}), pt({2, 4, 6}), pt({0, 1, 1})};
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(independent_rows(m), (std::vector<std::size_t>{0, 2}));
  auto x = solve({pt({2, 1}), pt({1, 3})}, pt({5, 10}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, (Point{q(1), q(3)}));
  EXPECT_FALSE(solve({pt({1, 1}), pt({1, 1})}, pt({1, 2})).has_value());
  EXPECT_EQ(affine_rank({pt({0, 0}), pt({1, 1}), pt({2, 2})}), 1);
  EXPECT_TRUE(affinely_independent({pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}));
  EXPECT_THROW(affine_rank({}), GeometryError);
}

TEST(Lp, OptimalInfeasibleUnbounded) {
  LinearProgram lp(2);
  lp.add_constraint({q(1), q(1)}, Relation::LessEqual, q(4));
  lp.add_constraint({q(1), q(3)}, Relation::LessEqual, q(6));
  lp.set_objective({q(3), q(2)});
  auto s = lp.maximize();
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(12));
  EXPECT_EQ(s.values[0], q(4));

  LinearProgram bad(1);
  bad.add_constraint({q(1)}, Relation::GreaterEqual, q(2));
  bad.add_constraint({q(1)}, Relation::LessEqual, q(1));
  EXPECT_EQ(bad.maximize().status, LpStatus::Infeasible);

  LinearProgram open(2);
  open.add_constraint({q(1), q(-1)}, Relation::LessEqual, q(1));
  open.set_objective({q(1), q(0)});
  EXPECT_EQ(open.maximize().status, LpStatus::Unbounded);
}

TEST(Lp, EqualitiesNegativeRhsAndRedundancy) {
  LinearProgram lp(3);
  lp.add_constraint({q(1), q(1), q(1)}, Relation::Equal, q(1));
  lp.add_constraint({q(2), q(2), q(2)}, Relation::Equal, q(2));
  lp.add_constraint({q(-1), q(0), q(0)}, Relation::LessEqual, q(-1, 3));
  lp.set_objective({q(0), q(1), q(0)});
  auto s = lp.maximize();
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(2, 3));
  EXPECT_EQ(s.values[0] + s.values[1] + s.values[2], q(1));
}

TEST(Lp, DegenerateCycleInstanceTerminates) {
  // Beale's example cycles under the textbook largest-coefficient rule.
  LinearProgram lp(4);
  lp.add_constraint({q(1, 4), q(-8), q(-1), q(9)}, Relation::LessEqual, q(0));
  lp.add_constraint({q(1, 2), q(-12), q(-1, 2), q(3)}, Relation::LessEqual, q(0));
  lp.add_constraint({q(0), q(0), q(1), q(0)}, Relation::LessEqual, q(1));
  lp.set_objective({q(3, 4), q(-20), q(1, 2), q(-6)});
  auto s = lp.maximize();
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.objective, q(5, 4));
}

TEST(Simplex, BarycentricCoordinates) {
  Simplex seg({pt({0}), pt({1})});
  auto b = barycentric_coords(seg, Point{q(1, 2)});
  EXPECT_EQ(b.coords, (std::vector<Rational>{q(1, 2), q(1, 2)}));
  EXPECT_TRUE(b.in_relint);
  auto tri = standard_simplex(2);
  EXPECT_EQ(tri.ambient_dim(), 3u);
  auto bc = barycentric_coords(tri, tri.barycentre());
  for (const auto& c : bc.coords) EXPECT_EQ(c, q(1, 3));
  auto v = barycentric_coords(tri, tri.vertices()[0]);
  EXPECT_EQ(v.coords[0], q(1));
  EXPECT_TRUE(v.in_simplex);
  EXPECT_FALSE(v.in_relint);
  EXPECT_THROW(barycentric_coords(tri, pt({1, 1, 1})), NotInAffineHull);
  EXPECT_THROW(Simplex({pt({0, 0}), pt({1, 1}), pt({2, 2})}), GeometryError);
}

TEST(Membership, InsideAndSeparated) {
  std::vector<Point> tri{pt({0, 0}), pt({2, 0}), pt({0, 2})};
  auto v = convex_membership(tri, pt({2, 0}));
  EXPECT_TRUE(v.inside);
  EXPECT_TRUE(check_membership_certificate(tri, pt({2, 0}), v));
  auto mid = convex_membership({pt({0, 0}), pt({2, 0})}, pt({1, 0}));
  ASSERT_TRUE(mid.inside);
  EXPECT_EQ(mid.weights, (std::vector<Rational>{q(1, 2), q(1, 2)}));
  Point out = pt({2, 2});
  auto m = convex_membership(tri, out);
  ASSERT_FALSE(m.inside);
  auto dot = [&](const Point& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += m.separator.normal[i] * p[i];
    return s;
  };
  for (const auto& p : tri) EXPECT_LE(dot(p), m.separator.offset);
  EXPECT_GT(dot(out), m.separator.offset);
  EXPECT_TRUE(check_membership_certificate(tri, out, m));
}

TEST(Complex, ValidAndOverlapping) {
  auto one = SimplicialComplex::closure({pt({0, 0}), pt({1, 0}), pt({0, 1})}, {{0, 1, 2}});
  EXPECT_TRUE(check_complex(one).pass());
  EXPECT_EQ(one.size(), 7u);
  auto glued = SimplicialComplex::closure({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, {{0, 1, 2}, {1, 2, 3}});
  EXPECT_TRUE(check_complex(glued).pass());

  auto bad = SimplicialComplex::closure({pt({0, 0}), pt({2, 0}), pt({0, 2}), pt({1, 1}), pt({3, 1}), pt({1, 3})},
                                        {{0, 1, 2}, {3, 4, 5}});
  auto r = check_complex(bad);
  ASSERT_EQ(r.failure, ComplexCheck::Failure::BadIntersection);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(convex_membership(bad.points_of(bad.simplices()[r.first]), *r.witness).inside);
  EXPECT_TRUE(convex_membership(bad.points_of(bad.simplices()[r.second]), *r.witness).inside);

  SimplicialComplex open({pt({0, 0}), pt({1, 0})}, {{0, 1}});
  EXPECT_EQ(check_complex(open).failure, ComplexCheck::Failure::NotFaceClosed);
}

TEST(Complex, CarrierAndOpenStar) {
  auto c = SimplicialComplex::closure({pt({0, 0}), pt({3, 0}), pt({0, 3})}, {{0, 1, 2}});
  EXPECT_EQ(c.simplices()[carrier(c, pt({0, 0}))], (VertexSet{0}));
  EXPECT_EQ(c.simplices()[carrier(c, pt({1, 1}))], (VertexSet{0, 1, 2}));
  EXPECT_THROW(carrier(c, pt({5, 5})), GeometryError);
  auto top = *c.find({0, 1, 2});
  EXPECT_EQ(open_star(c, top), (std::vector<std::size_t>{top}));
  auto star = open_star(c, *c.find({0}));
  EXPECT_EQ(star.size(), 4u);
  auto fp = face_poset(c);
  ElementSet s(fp.size());
  for (auto i : star) s.set(fp.at(simplex_key(c.simplices()[i])));
  EXPECT_TRUE(fp.is_upset(s));
}

TEST(Complex, RandomPointsHaveOneCarrier) {
  auto c = SimplicialComplex::closure({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})}, {{0, 1, 2}, {1, 2, 3}});
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& top = c.simplices()[rng() % c.size()];
    auto w = random_convex_weights(top.size(), rng, 4);
    Point x = combine(c.points_of(top), w);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      try {
        if (barycentric_coords(c.simplex(i), x).in_relint) ++hits;
      } catch (const NotInAffineHull&) {
      }
    }
    EXPECT_EQ(hits, 1u);
    EXPECT_TRUE(barycentric_coords(c.simplex(carrier(c, x)), x).in_relint);
  }
}

TEST(Nerve, SmallCases) {
  auto n1 = nerve(builtin_frame("point"));
  EXPECT_EQ(n1.poset.size(), 1u);
  auto n2 = nerve(builtin_frame("2-chain"));
  EXPECT_EQ(n2.poset.size(), 3u);
  EXPECT_EQ(n2.poset.height(), 1);
  EXPECT_TRUE(is_p_morphism(n2.max_map).ok());
  auto d = nabla(builtin_frame("2-chain"));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(dimension(d), 1);
  auto anti = nabla(Poset::from_relations({"a", "b"}, {}));
  EXPECT_EQ(anti.size(), 2u);
  EXPECT_EQ(dimension(anti), 0);
}

TEST(ChainHull, StandardAndCollapsed) {
  Poset s = builtin_frame("scott");
  std::vector<Point> alpha;
  for (std::size_t i = 0; i < s.size(); ++i) alpha.push_back(basis_vector(s.size(), i));
  EXPECT_TRUE(chain_hull_disjointness(s, alpha).pass);
  alpha[s.at("v1")] = alpha[s.at("u1")];
  auto r = chain_hull_disjointness(s, alpha);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(Facets, Incidence) {
  auto tet = SimplicialComplex::closure({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}, {{0, 1, 2, 3}});
  EXPECT_TRUE(facet_incidence_check(tet).pass);
  auto two = SimplicialComplex::closure(
      {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 1, 1})}, {{0, 1, 2, 3}, {1, 2, 3, 4}});
  EXPECT_TRUE(facet_incidence_check(two).pass);
  EXPECT_EQ(dimension(two), 3);
  auto three = SimplicialComplex::closure({pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({0, -1}), pt({1, 1})},
                                          {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  auto r = facet_incidence_check(three);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.cofaces, 3u);
}

TEST(Weights, ConvexAndSeeded) {
  std::mt19937_64 a(7), b(7);
  auto w = random_convex_weights(5, a);
  EXPECT_EQ(w, random_convex_weights(5, b));
  Rational sum = 0;
  for (const auto& x : w) {
    EXPECT_GE(x, 0);
    sum += x;
  }
  EXPECT_EQ(sum, 1);
}

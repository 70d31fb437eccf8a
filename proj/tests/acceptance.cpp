// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "support/oracles.hpp"

#include <polyframe/formula.hpp>
#include <polyframe/frames.hpp>
#include <polyframe/generators.hpp>
#include <polyframe/geometry.hpp>
#include <polyframe/io.hpp>
#include <polyframe/linalg.hpp>
#include <polyframe/realization.hpp>
#include <polyframe/reduction.hpp>

#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace polyframe;

namespace {

// Pinned limits, in seconds.
constexpr double kLimitAxiomatization = 600;
constexpr double kLimitReduction = 300;
constexpr double kLimitRealization = 600;
constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = false;
  std::string detail;
  double limit = 0;  // 0: no time limit
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.limit > 0 && secs > o.limit) {
    o.pass = false;
    o.detail += fmt::format("; over the {:.0f} s limit", o.limit);
  }
  if (!o.pass) ++failures;
  fmt::print("[{}] {} {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail, secs);
  std::fflush(stdout);
}

std::vector<int> image_of(const PosetMap& f) { return {f.image.begin(), f.image.end()}; }

Outcome axiomatization() {
  auto frames = oracle::rooted_posets_up_to_iso(6);
  auto fork3 = oracle::Rel::of(builtin_frame("three_fork"));
  auto scott = oracle::Rel::of(builtin_frame("scott"));
  std::size_t mismatches = 0, checked = 0;
  for (const auto& p : frames) {
    auto rel = oracle::Rel::of(p);
    bool no_fork = !oracle::up_reduction(rel, fork3).has_value();
    bool no_scott = !oracle::up_reduction(rel, scott).has_value();
    for (int n = 1; n <= 4; ++n) {
      bool lhs = satisfies_pl(p, n).pass();
      bool rhs = satisfies_bd(p, n) && no_fork && no_scott;
      ++checked;
      if (lhs != rhs) ++mismatches;
    }
  }
  return {mismatches == 0 && frames.size() == 88,
          fmt::format("{} rooted posets up to iso, {} (P, n) cases, {} mismatches", frames.size(), checked,
                      mismatches),
          kLimitAxiomatization};
}

Outcome up_reduction_search() {
  std::vector<Poset> sources;
  for (int k = 1; k <= 6; ++k) {
    auto ps = oracle::posets_up_to_iso(k);
    sources.insert(sources.end(), ps.begin(), ps.end());
  }
  auto targets = oracle::rooted_posets_up_to_iso(4);
  std::size_t mismatches = 0, found = 0;
  for (const auto& p : sources) {
    auto prel = oracle::Rel::of(p);
    for (const auto& q : targets) {
      auto got = find_up_reduction(p, q);
      auto want = oracle::up_reduction(prel, oracle::Rel::of(q));
      bool ok = got.has_value() == want.has_value();
      if (ok && got) {
        ++found;
        // The returned map must itself be a surjective p-morphism from an upset.
        std::vector<int> f(p.size(), -1);
        for (std::size_t i = 0; i < got->domain_ids.size(); ++i) {
          f[got->domain_ids[i]] = static_cast<int>(got->map.image[i]);
        }
        oracle::Mask dom = 0;
        for (auto x : got->domain_ids) dom |= oracle::Mask{1} << x;
        std::vector<bool> hit(q.size(), false);
        for (int v : f) {
          if (v >= 0) hit[static_cast<std::size_t>(v)] = true;
        }
        ok = prel.is_upset(dom) && oracle::is_p_morphism(prel, oracle::Rel::of(q), f) &&
             std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
      }
      if (!ok) ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt::format("{} sources x {} rooted targets, {} reductions found, {} mismatches", sources.size(),
                      targets.size(), found, mismatches)};
}

Outcome sawed_trees_pl() {
  std::mt19937_64 rng(kSeed);
  std::size_t failed = 0, total = 0;
  for (int h = 2; h <= 4; ++h) {
    for (int i = 0; i < 20; ++i, ++total) {
      auto st = random_sawed_tree(h, 2 + i % 2, rng);
      if (st.height() != h || !satisfies_pl(st.frame(), h).pass()) ++failed;
    }
  }
  return {failed == 0 && total >= 50, fmt::format("{} sawed trees of heights 2-4, {} failures", total, failed)};
}

Outcome reduction() {
  std::mt19937_64 rng(kSeed + 1);
  std::size_t failed = 0, total = 0, max_tree = 0;
  for (int i = 0; i < 60; ++i, ++total) {
    int h = 2 + i % 3;
    auto p = random_pl_frame(h, 12, rng);
    auto red = reduce_to_sawed_tree(p);
    max_tree = std::max(max_tree, red.tree.frame().size());
    bool ok = red.tree.height() == p.height() && red.map.target == p &&
              oracle::is_p_morphism(oracle::Rel::of(red.map.source), oracle::Rel::of(p), image_of(red.map)) &&
              is_p_morphism(red.map).ok() && is_surjective(red.map);
    if (!ok) ++failed;
  }
  return {failed == 0,
          fmt::format("{} random rooted PL frames (heights 2-4, size <= 12), largest sawed tree {}, {} failures",
                      total, max_tree, failed),
          kLimitReduction};
}

Outcome realization() {
  std::vector<std::pair<std::string, SawedTree>> cases;
  cases.emplace_back("height-3 example", io::sawed_tree_from_json(io::read_json_file(POLYFRAME_DATA_DIR "/height3.json")));
  std::mt19937_64 rng(kSeed + 2);
  for (int i = 0; i < 20; ++i) cases.emplace_back("h" + std::to_string(2 + i % 2), random_sawed_tree(2 + i % 2, 2, rng));
  for (int i = 0; i < 3; ++i) cases.emplace_back("h4", random_sawed_tree(4, 2, rng));
  std::size_t failed = 0;
  std::string first_failure;
  std::string example;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [label, st] = cases[i];
    auto r = realize_sawed_tree(st);
    auto rep = verify_realization(r, {100, kSeed + i});
    const auto& vs = r.complex.vertices();
    int dim = affine_rank(vs);
    std::size_t lin = rank(Matrix(vs.begin(), vs.end()));
    bool ok = rep.pass() && rep.checks.size() == 6 && dim == r.n && lin == static_cast<std::size_t>(r.n) + 1;
    if (i == 0) {
      example = fmt::format("height-3 example: {} vertices, ambient {}, linear rank {}, affine dimension {}", vs.size(),
                           r.complex.ambient_dim(), lin, dim);
    }
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = fmt::format("; first failure {} #{}:\n{}", label, i, rep.to_string());
    }
  }
  return {failed == 0,
          fmt::format("{} realizations (height-3 example, 20 of heights 2-3, 3 of height 4), all six checks; {}; {} failures{}",
                      cases.size(), example, failed, first_failure),
          kLimitRealization};
}

Outcome nerves() {
  std::mt19937_64 rng(kSeed + 3);
  std::size_t failed = 0;
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_poset(1 + i % 7, 0.2 + 0.1 * (i % 5), rng);
    auto n = nerve(p);
    auto d = nabla(p);
    int h = oracle::height(oracle::Rel::of(p));
    bool ok = n.poset.height() == h && oracle::height(oracle::Rel::of(n.poset)) == h &&
              oracle::is_p_morphism(oracle::Rel::of(n.poset), oracle::Rel::of(p), image_of(n.max_map)) &&
              is_surjective(n.max_map) && check_complex(d).pass() && dimension(d) == h;
    if (!ok) ++failed;
  }
  return {failed == 0, fmt::format("100 random posets of size <= 7, {} failures", failed)};
}

Outcome esakia() {
  std::mt19937_64 rng(kSeed + 4);
  std::size_t failed = 0;
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_poset(1 + i % 6, 0.2 + 0.1 * (i % 5), rng);
    auto alg = up_algebra(p);
    auto spec = prime_filter_spectrum(alg);
    auto canon = canonical_spectrum_map(alg, spec);
    bool ok = canon.has_value() && spec.poset.size() == p.size();
    if (ok) {
      // Order isomorphism checked pointwise on the relation matrices.
      auto a = oracle::Rel::of(p);
      auto b = oracle::Rel::of(spec.poset);
      std::vector<bool> hit(p.size(), false);
      for (auto y : *canon) hit[y] = true;
      ok = std::all_of(hit.begin(), hit.end(), [](bool v) { return v; });
      for (int x = 0; x < a.n && ok; ++x) {
        for (int y = 0; y < a.n && ok; ++y) ok = a.leq[x][y] == b.leq[(*canon)[x]][(*canon)[y]];
      }
    }
    if (!ok || !esakia_round_trip(p)) ++failed;
  }
  return {failed == 0, fmt::format("100 random posets of size <= 6, {} failures", failed)};
}

Outcome formula_engine() {
  std::string detail;
  bool ok = true;
  Poset chain = builtin_frame("2-chain");
  for (const char* text : {"~~p -> p", "((p -> q) -> p) -> p"}) {
    auto f = parse_formula(text);
    auto r = frame_validates(chain, f);
    if (r.valid()) {
      ok = false;
      detail += fmt::format("'{}' not refuted; ", text);
      continue;
    }
    auto alg = up_algebra(chain);
    ok = ok && !eval(f, alg, r.refutation->valuation).test(r.refutation->failing_element);
    fmt::print("    countermodel for {}: {}\n", text, describe(chain, *r.refutation));
  }
  const char* theorems[] = {
      "p -> p",
      "p -> q -> p",
      "(p -> q -> r) -> (p -> q) -> p -> r",
      "p & q -> p",
      "p & q -> q",
      "p -> p | q",
      "q -> p | q",
      "(p -> r) -> (q -> r) -> p | q -> r",
      "p -> q -> p & q",
      "false -> p",
      "p & (q | r) -> (p & q) | (p & r)",
      "(p & q) | (p & r) -> p & (q | r)",
      "p -> ~~p",
      "~~~p -> ~p",
      "(p -> q) -> ~q -> ~p",
      "~(p | q) -> ~p & ~q",
      "~p & ~q -> ~(p | q)",
      "~~(p | ~p)",
      "(p -> q) & (q -> r) -> p -> r",
      "p & ~p -> q",
  };
  std::vector<Poset> small;
  for (int k = 1; k <= 5; ++k) {
    auto ps = oracle::posets_up_to_iso(k);
    small.insert(small.end(), ps.begin(), ps.end());
  }
  std::size_t mismatches = 0;
  for (const char* text : theorems) {
    auto f = parse_formula(text);
    for (const auto& p : small) {
      if (!frame_validates(p, f).valid() || !oracle::valid(oracle::Rel::of(p), f)) ++mismatches;
    }
  }
  std::size_t bd_mismatches = 0;
  for (const auto& p : small) {
    int h = oracle::height(oracle::Rel::of(p));
    for (int n = 1; n <= 3; ++n) {
      // The schema counts chain points, height counts edges.
      bool schema = frame_validates(p, bounded_depth_formula(n + 1)).valid();
      if (schema != (h <= n) || satisfies_bd(p, n) != (h <= n)) ++bd_mismatches;
    }
  }
  ok = ok && mismatches == 0 && bd_mismatches == 0;
  detail += fmt::format("2 refutations on the 2-chain; 20 theorems x {} posets, {} mismatches; bd schema vs height, "
                        "{} mismatches (bd_(n+1) against height <= n, n = 1..3)",
                        small.size(), mismatches, bd_mismatches);
  return {ok, detail};
}

// Exact image of an open interval under the PL map, from its defining vertices.
Interval image_oracle(const PiecewiseAffineIntervalMap& f, const Rational& lo, const Rational& hi) {
  std::vector<Rational> inner;
  for (const auto& b : f.breakpoints()) {
    if (lo < b && b < hi) inner.push_back(f(b));
  }
  Rational fl = f(lo), fh = f(hi);
  Rational mn = std::min(fl, fh), mx = std::max(fl, fh);
  for (const auto& v : inner) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  bool mn_in = std::find(inner.begin(), inner.end(), mn) != inner.end();
  bool mx_in = std::find(inner.begin(), inner.end(), mx) != inner.end();
  return {mn, mx, mn_in, mx_in};
}

Outcome interval_surjection() {
  struct Params {
    Rational a_outer, x, a, b, y, b_outer;
    int steps;
  };
  using R = Rational;
  std::vector<Params> params{{R(0), R(1), R(2), R(3), R(4), R(5), 20},
                             {R(0), R(1, 5), R(1, 3), R(1, 2), R(3, 4), R(1), 24}};
  std::size_t intervals = 0, mismatches = 0, case1 = 0, case2 = 0, case3 = 0, case3_outside = 0, mirrored = 0, boundary = 0;
  bool whole = true;
  for (const auto& pr : params) {
    auto f = build_interval_surjection(pr.a_outer, pr.x, pr.a, pr.b, pr.y, pr.b_outer);
    whole = whole && f.image(Interval::open(pr.a_outer, pr.b_outer)) == Interval::closed(pr.x, pr.y);
    std::vector<Rational> grid;
    for (int k = 0; k <= pr.steps; ++k) grid.push_back(pr.a_outer + (pr.b_outer - pr.a_outer) * R(k, pr.steps));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const auto& al = grid[i];
        const auto& be = grid[j];
        ++intervals;
        auto got = f.image(Interval::open(al, be));
        if (!(got == image_oracle(f, al, be))) ++mismatches;
        // Openness in [x, y]: an end may be closed only at x or y.
        if ((got.lo_closed && got.lo != pr.x) || (got.hi_closed && got.hi != pr.y)) ++mismatches;
        if (pr.x <= al && be <= pr.y) {
          ++case1;
          if (!(got == Interval::open(al, be))) ++mismatches;
        } else if (al < pr.x && pr.y < be) {
          ++case2;
          if (!(got == Interval::closed(pr.x, pr.y))) ++mismatches;
        } else if (al < pr.x && pr.x < be && be < pr.y) {
          // The stated image [x, beta) needs f(alpha) <= beta; otherwise the
          // image extends to f(alpha).
          if (f(al) <= be) {
            ++case3;
            if (!(got == Interval{pr.x, be, true, false})) ++mismatches;
          } else {
            ++case3_outside;
            if (!(got == Interval{pr.x, f(al), true, false})) ++mismatches;
          }
        } else if (pr.x < al && al < pr.y && pr.y < be) {
          ++mirrored;
          if (!(got == Interval{std::min(al, f(be)), pr.y, false, true})) ++mismatches;
        } else if (al < pr.x && be == pr.y) {
          // Ends exactly at y: y itself is not reached.
          ++boundary;
          if (!(got == Interval{pr.x, pr.y, true, false})) ++mismatches;
        } else if (al == pr.x && pr.y < be) {
          ++boundary;
          if (!(got == Interval{pr.x, pr.y, false, true})) ++mismatches;
        }
      }
    }
  }
  return {whole && mismatches == 0 && intervals >= 200,
          fmt::format("{} grid subintervals, (a',b') onto [x,y]: {}; cases: inside {}, covering {}, left {} "
                      "(plus {} with f(alpha) > beta, image [x, f(alpha))), mirrored right {}, half-open at x or y {}; "
                      "{} mismatches",
                      intervals, whole ? "yes" : "no", case1, case2, case3, case3_outside, mirrored, boundary,
                      mismatches)};
}

}  // namespace

int main() {
  report(1, "axiomatization-equivalence", axiomatization);
  report(2, "up-reduction-search", up_reduction_search);
  report(3, "sawed-trees-validate-pl", sawed_trees_pl);
  report(4, "reduction-to-sawed-trees", reduction);
  report(5, "convex-realization", realization);
  report(6, "nerve-properties", nerves);
  report(7, "esakia-round-trip", esakia);
  report(8, "formula-engine", formula_engine);
  report(9, "interval-surjection", interval_surjection);
  fmt::print("{} of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}

#pragma once

// Brute-force reference implementations used only by tests. They work on
// plain relation matrices and bitmasks so they share no code paths with the
// library algorithms they check.

#include <polyframe/formula.hpp>
#include <polyframe/poset.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Mask = std::uint32_t;

/// Reflexive-transitive closure of the cover relation, leq[i][j] = i <= j.
struct Rel {
  int n = 0;
  std::vector<std::vector<bool>> leq;

  static Rel of(const polyframe::Poset& p);
  bool is_upset(Mask m) const;
  Mask up(int x) const;
};

/// Every upset as a bitmask, in increasing mask order.
std::vector<Mask> upsets(const Rel& r);

/// Longest chain length minus one, by DFS over all chains.
int height(const Rel& r);

/// Some surjective p-morphism from an upset of P onto Q: domain mask plus
/// image per element (-1 outside the domain).
struct BruteReduction {
  Mask domain = 0;
  std::vector<int> image;
};
std::optional<BruteReduction> up_reduction(const Rel& p, const Rel& q);

/// Checks the p-morphism clauses literally: monotone and back condition.
bool is_p_morphism(const Rel& src, const Rel& dst, const std::vector<int>& f);

/// Kripke forcing at x under a valuation of atoms by upset masks.
bool forces(const Rel& r, const polyframe::Formula& f, const std::vector<std::pair<std::string, Mask>>& val,
            int x);

/// Validity by exhaustive search over upset valuations and points.
bool valid(const Rel& r, const polyframe::Formula& f);

/// All posets with exactly `size` elements up to isomorphism, elements named p0, p1, ...
std::vector<polyframe::Poset> posets_up_to_iso(int size);

/// Rooted posets of every size 1..max_size up to isomorphism (a root added to each smaller poset).
std::vector<polyframe::Poset> rooted_posets_up_to_iso(int max_size);

/// Random poset on `size` elements, independent of the library generator.
polyframe::Poset random_poset(int size, double density, std::mt19937_64& rng);

}  // namespace oracle

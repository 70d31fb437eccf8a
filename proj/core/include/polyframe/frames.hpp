#pragma once

#include "polyframe/formula.hpp"
#include "polyframe/poset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyframe {

inline constexpr std::size_t kDefaultCarrierCap = std::size_t{1} << 20;

/// The Heyting algebra Up F of upward-closed subsets of a finite poset.
class UpsetAlgebra {
 public:
  using value_type = ElementSet;

  /// Enumerates every upset. Throws CapExceeded once more than `cap` are found.
  explicit UpsetAlgebra(Poset frame, std::size_t cap = kDefaultCarrierCap);

  const Poset& frame() const noexcept { return frame_; }
  /// Members ordered by cardinality, then by bit pattern.
  const std::vector<ElementSet>& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  std::optional<std::size_t> index_of(const ElementSet& u) const;

  ElementSet top() const { return frame_.full_set(); }
  ElementSet bottom() const { return frame_.empty_set(); }
  ElementSet meet(const ElementSet& u, const ElementSet& v) const { return u & v; }
  ElementSet join(const ElementSet& u, const ElementSet& v) const { return u | v; }
  /// {x : ↑x ∩ u ⊆ v}
  ElementSet implies(const ElementSet& u, const ElementSet& v) const;

 private:
  Poset frame_;
  std::vector<ElementSet> carrier_;
  std::unordered_map<ElementSet, std::size_t> index_;
};

UpsetAlgebra up_algebra(const Poset& frame, std::size_t cap = kDefaultCarrierCap);

/// Countermodel: a valuation of the formula's atoms and a point where it fails.
struct Refutation {
  Valuation<ElementSet> valuation;
  ElementId failing_element;
};

struct ValidityResult {
  std::optional<Refutation> refutation;
  bool valid() const noexcept { return !refutation.has_value(); }
};

/// Enumerates valuations of the atoms of `f` over Up F; stops at the first refutation.
ValidityResult frame_validates(const Poset& frame, const Formula& f,
                               std::size_t cap = kDefaultCarrierCap);

/// Human-readable rendering of a refutation.
std::string describe(const Poset& frame, const Refutation& r);

/// A total map between finite posets.
struct PosetMap {
  Poset source;
  Poset target;
  std::vector<ElementId> image;

  ElementId operator()(ElementId x) const { return image.at(x); }
  ElementSet image_of(const ElementSet& s) const;
};

struct PMorphismCheck {
  enum class Failure { None, NotTotal, Monotonicity, Back };
  Failure failure = Failure::None;
  /// Monotonicity: (x, x') with x <= x' but f(x) !<= f(x').
  /// Back: (x, y) with f(x) <= y in the target and no x' >= x mapping to y.
  std::pair<ElementId, ElementId> witness{0, 0};

  bool ok() const noexcept { return failure == Failure::None; }
};

/// Checks f(↑x) = ↑f(x) for every x.
PMorphismCheck is_p_morphism(const PosetMap& f);
bool is_surjective(const PosetMap& f);
std::string describe(const PosetMap& f, const PMorphismCheck& check);

PosetMap identity_map(const Poset& p);
/// g ∘ f. Throws PreconditionError if f's target and g's source differ.
PosetMap compose(const PosetMap& f, const PosetMap& g);

/// A surjective p-morphism from an upward-closed subset of a frame.
struct UpReduction {
  ElementSet domain;
  /// Original id in the frame of each element of `map.source`.
  std::vector<ElementId> domain_ids;
  PosetMap map;
};

/// Backtracking search for an up-reduction of `frame` onto the rooted frame `target`.
/// Deterministic: candidate roots and targets are tried in name order.
/// Throws PreconditionError when `target` is not rooted.
std::optional<UpReduction> find_up_reduction(const Poset& frame, const Poset& target);

/// F ⊨ χ(Q) iff F does not up-reduce to Q.
bool validates_jankov_fine(const Poset& frame, const Poset& target);

/// F ⊨ BD_n iff height(F) <= n.
bool satisfies_bd(const Poset& frame, int n);

struct PlResult {
  enum class Clause { None, Height, DepthOne, Connected };
  Clause clause = Clause::None;
  ElementId witness = 0;

  bool pass() const noexcept { return clause == Clause::None; }
};

/// Structural form of PL_n (n = nullopt for PL):
/// (i) height <= n; (ii) depth(x) = 1 implies |⇑x| <= 2;
/// (iii) depth(x) > 1 implies ⇑x connected.
PlResult satisfies_pl(const Poset& frame, std::optional<int> n = std::nullopt);
std::string describe(const Poset& frame, const PlResult& r);
const char* clause_name(PlResult::Clause c);

/// Builtin frames: point, <k>-fork, <k>-chain, three_fork, two_fork, scott.
/// The three-fork is a root below three incomparable tops; the Scott frame
/// is bot < u1 < u2 together with bot < v1.
Poset builtin_frame(std::string_view name);
std::vector<std::string> builtin_frame_names();

/// Spec(A): prime filters of the algebra, ordered by inclusion.
/// Each element is named "F<i>" where i indexes the filter's least member in A's carrier.
struct Spectrum {
  Poset poset;
  /// Carrier index of the least member generating each prime filter.
  std::vector<std::size_t> generators;
};
Spectrum prime_filter_spectrum(const UpsetAlgebra& algebra);

/// x ↦ {U : x ∈ U}, expressed as spectrum element ids; empty when some image is not a prime filter.
std::optional<std::vector<ElementId>> canonical_spectrum_map(const UpsetAlgebra& algebra,
                                                             const Spectrum& spectrum);

/// True when the canonical map is an order isomorphism F ≅ Spec Up F.
bool esakia_round_trip(const Poset& frame, std::size_t cap = kDefaultCarrierCap);

}  // namespace polyframe

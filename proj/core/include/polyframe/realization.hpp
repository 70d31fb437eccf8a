#pragma once

#include "polyframe/frames.hpp"
#include "polyframe/geometry.hpp"
#include "polyframe/reduction.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyframe {

/// One n-dimensional saw cell ξ_i = Conv(τ_i ∪ τ_{i+1}) minus its two facets.
struct SawCell {
  VertexSet vertices;
  std::array<VertexSet, 2> removed_facets;
  ElementId label;
};

/// A labelled cell decomposition realising a frame: the simplices of Σ and
/// the open saw cells, each mapped to a frame element.
struct ConvexRealization {
  Poset frame;
  int n = 0;
  SimplicialComplex complex;
  /// Frame element for every simplex of `complex`.
  std::vector<ElementId> simplex_labels;
  std::vector<SawCell> saw_cells;

  /// Frame element realised by each vertex (the label of its 0-simplex).
  std::vector<ElementId> vertex_elements() const;
  /// The poset whose chains index Σ: the frame restricted to vertex elements.
  Poset chain_poset(std::vector<ElementId>* ids = nullptr) const;
};

/// ∇F with labels max(chain): the nerve realisation of any finite poset.
ConvexRealization realize_nerve(const Poset& frame);

/// Convex realisation of a sawed tree of height n >= 2:
/// α(x) = e_{height(x)} + d_1(x)·e_n in ambient dimension n+1, Σ over the
/// chains of the tree part, saw cells over consecutive tops. Checks (1)-(4)
/// of verify_realization run before returning; failure throws InvariantError.
ConvexRealization realize_sawed_tree(const SawedTree& tree);

struct CellMap {
  Poset cells;
  PosetMap labels;
  /// Number of simplices; cell ids >= this index saw cells.
  std::size_t simplex_count = 0;
};

/// Incidence poset of the cells (simplex faces, and σ below ξ_i when σ lies in
/// ξ_i inside one of its removed facets) with the label map onto the frame.
CellMap induced_cell_map(const ConvexRealization& r);

struct VerifyOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 0x5eed;
};

struct CheckEntry {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  bool pass() const;
  std::string to_string() const;
};

/// The six checks, always reported in this order:
/// (1) complex + chain-hull disjointness, (2) dimension, (3) saw-cell
/// intersections, (4) hull equality, (5) cell map is a surjective
/// p-morphism, (6) pairwise disjoint relative interiors and sampled partition.
VerificationReport verify_realization(const ConvexRealization& r, const VerifyOptions& opts = {});

/// Label of the cell containing x. Throws GeometryError when x ∉ P or when
/// the saw cells do not claim x exactly once.
ElementId eval_point(const ConvexRealization& r, const Point& x);

/// Exact facets-of-triangulation of P: each saw cell split into staircase
/// n-simplices; returned with all faces.
SimplicialComplex triangulate_saw_cells(const ConvexRealization& r);

/// Rational interval with open or closed ends.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(Rational a, Rational b) { return {std::move(a), std::move(b), true, true}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  bool contains(const Rational& t) const;
  bool empty() const;
  friend bool operator==(const Interval& a, const Interval& b) = default;
};
std::string to_string(const Interval& i);

/// Cells of a 1-dimensional labelled decomposition of [0,1].
struct IntervalCell {
  Interval span;
  ElementId label;
};

struct IntervalRealization {
  Poset frame;
  std::vector<IntervalCell> cells;

  /// Cell order: a <= b iff a meets the closure of b.
  CellMap cell_map() const;
  ElementId label_at(const Rational& t) const;
  /// Cells partition [0,1] and the cell map is a surjective p-morphism.
  bool verify(std::string* reason = nullptr) const;
};

/// Rooted frames of height <= 1 that satisfy PL_1: the point, the 1-fork
/// and the 2-fork. The 2-fork sends 1/2 to the root and [0,1/2), (1/2,1] to
/// the two tops. Throws PreconditionError for any other shape.
IntervalRealization realize_low_height(const Poset& frame);

/// Piecewise-affine f: [a′,b′] → [x,y] through f(a′)=a, f(x)=x, f(a)=a,
/// f(b)=b, f(y)=y, f(b′)=b.
class PiecewiseAffineIntervalMap {
 public:
  PiecewiseAffineIntervalMap(Rational a_outer, Rational x, Rational a, Rational b, Rational y,
                             Rational b_outer);

  const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  Interval domain() const { return Interval::closed(breaks_.front(), breaks_.back()); }

  Rational operator()(const Rational& t) const;
  /// Exact image of a subinterval of the domain.
  Interval image(const Interval& i) const;

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

/// Throws PreconditionError unless a′ < x < a < b < y < b′.
PiecewiseAffineIntervalMap build_interval_surjection(Rational a_outer, Rational x, Rational a,
                                                     Rational b, Rational y, Rational b_outer);

}  // namespace polyframe

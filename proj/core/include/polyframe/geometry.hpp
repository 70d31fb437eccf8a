#pragma once

#include "polyframe/frames.hpp"
#include "polyframe/poset.hpp"
#include "polyframe/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polyframe {

/// Convex hull of affinely independent points. Vertices are kept in
/// lexicographic coordinate order, so equality is vertex-set equality.
class Simplex {
 public:
  /// Throws GeometryError on empty input, mixed ambient dimensions or
  /// affinely dependent vertices.
  explicit Simplex(std::vector<Point> vertices);

  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t ambient_dim() const noexcept { return vertices_.front().size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  Point barycentre() const;

  /// Faces are given by nonempty vertex subsets; true when `other` is one of them.
  bool has_face(const Simplex& other) const;

  friend bool operator==(const Simplex& a, const Simplex& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

Simplex standard_simplex(int n);

struct Barycentric {
  std::vector<Rational> coords;
  bool in_simplex = false;  ///< every coordinate >= 0
  bool in_relint = false;   ///< every coordinate > 0
};

/// Unique affine weights of `x` w.r.t. the simplex vertices (in Simplex order).
/// Throws NotInAffineHull when x is off the affine hull.
Barycentric barycentric_coords(const Simplex& s, const Point& x);

/// Affine functional a·p with threshold c: a·v <= c on the point set, a·x > c.
struct Separator {
  std::vector<Rational> normal;
  Rational offset;
};

struct Membership {
  bool inside = false;
  std::vector<Rational> weights;  ///< convex weights recombining to x when inside
  Separator separator;            ///< strict separator when outside
};

/// Exact decision of x ∈ Conv V with a self-checking certificate.
Membership convex_membership(const std::vector<Point>& vertices, const Point& x);

/// True when `weights` are convex and recombine `vertices` to `x`.
bool check_membership_certificate(const std::vector<Point>& vertices, const Point& x,
                                  const Membership& m);

using VertexSet = std::vector<std::size_t>;

/// Finite family of simplices over a shared vertex table. Each simplex is a
/// sorted list of vertex indices; faces are not implied unless built with
/// `closure`.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  SimplicialComplex(std::vector<Point> vertices, std::vector<VertexSet> simplices);

  /// Adds every nonempty face of the given simplices.
  static SimplicialComplex closure(std::vector<Point> vertices,
                                   const std::vector<VertexSet>& simplices);

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<VertexSet>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  std::size_t ambient_dim() const { return vertices_.empty() ? 0 : vertices_.front().size(); }

  std::optional<std::size_t> find(const VertexSet& vs) const;
  std::vector<Point> points_of(const VertexSet& vs) const;
  Simplex simplex(std::size_t i) const { return Simplex(points_of(simplices_.at(i))); }

  /// Largest simplex dimension; -1 for the empty complex.
  int dimension() const;

 private:
  std::vector<Point> vertices_;
  std::vector<VertexSet> simplices_;
  std::map<VertexSet, std::size_t> index_;
};

std::string simplex_key(const VertexSet& vs);

int dimension(const SimplicialComplex& c);

struct ComplexCheck {
  enum class Failure { None, DependentVertices, NotFaceClosed, BadIntersection };
  Failure failure = Failure::None;
  std::size_t first = 0;
  std::size_t second = 0;
  std::optional<Point> witness;  ///< point in an illegal overlap

  bool pass() const noexcept { return failure == Failure::None; }
};

/// Face closure plus, for every pair, σ ∩ τ = Conv(V_σ ∩ V_τ), decided exactly.
ComplexCheck check_complex(const SimplicialComplex& c);

/// Exact test that Conv(a) ∩ Conv(b) ⊆ Conv(a ∩ b) over the shared vertex
/// indices; returns a point of the illegal overlap when it fails.
std::optional<Point> illegal_overlap(const std::vector<Point>& table, const VertexSet& a,
                                     const VertexSet& b);

/// The unique simplex whose relative interior contains x. Throws
/// GeometryError when x ∉ |Σ| or when the carrier is not unique.
std::size_t carrier(const SimplicialComplex& c, const Point& x);

/// {τ : σ ⪯ τ}; throws GeometryError for σ ∉ Σ.
std::vector<std::size_t> open_star(const SimplicialComplex& c, std::size_t sigma);

/// Σ ordered by the face relation; element i is named simplex_key(simplices()[i]).
Poset face_poset(const SimplicialComplex& c);

/// N(P): nonempty chains of P under inclusion, with the max p-morphism onto P.
struct Nerve {
  Poset poset;
  PosetMap max_map;
  /// Chain (bottom to top) for each nerve element id.
  std::vector<std::vector<ElementId>> chains;
};
Nerve nerve(const Poset& p);

/// ∇P in ambient dimension |P|: element i ↦ e_i, one simplex per chain.
/// Vertex index i corresponds to ElementId i.
SimplicialComplex nabla(const Poset& p);

struct ChainHullCheck {
  bool pass = true;
  std::vector<ElementId> first;
  std::vector<ElementId> second;
  std::optional<Point> witness;
};

/// Conv α[X] ∩ Conv α[Y] = ∅ for all disjoint chains X, Y. Throws
/// GeometryError when some α[X] is affinely dependent.
ChainHullCheck chain_hull_disjointness(const Poset& p, const std::vector<Point>& alpha);

struct FacetCheck {
  bool pass = true;
  std::optional<std::size_t> facet;
  std::size_t cofaces = 0;
};

/// Every (n-1)-simplex of an n-dimensional complex is a face of one or two n-simplices.
FacetCheck facet_incidence_check(const SimplicialComplex& c);

/// Uniform-ish rational convex weights from the generator, denominators bounded by `resolution`.
std::vector<Rational> random_convex_weights(std::size_t count, std::mt19937_64& rng,
                                            int resolution = 64);

}  // namespace polyframe

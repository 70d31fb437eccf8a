#pragma once

#include "polyframe/frames.hpp"
#include "polyframe/poset.hpp"
#include "polyframe/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polyframe {

/// A rooted tree whose tops all share one height, together with a plane
/// order t_1, ..., t_k of its tops such that ↑x ∩ Top is an interval for every x.
struct PlaneTree {
  Poset tree;
  std::vector<ElementId> tops_order;

  /// Throws InvariantError naming the first violated condition.
  void validate() const;
};

/// A plane tree plus saw nodes s_1..s_{k-1} with t_i, t_{i+1} < s_i.
class SawedTree {
 public:
  /// Checks every sawed-tree invariant; throws InvariantError otherwise.
  SawedTree(Poset frame, std::vector<ElementId> tops_order, std::vector<ElementId> saw_nodes);

  const Poset& frame() const noexcept { return frame_; }
  /// Tops of the tree part, in plane order (ids in frame()).
  const std::vector<ElementId>& tops_order() const noexcept { return tops_order_; }
  /// saw_nodes()[i] sits above tops_order()[i] and tops_order()[i + 1].
  const std::vector<ElementId>& saw_nodes() const noexcept { return saw_nodes_; }
  /// Every element that is not a saw node.
  const ElementSet& tree_part() const noexcept { return tree_part_; }
  bool is_saw(ElementId x) const { return !tree_part_.test(x); }

  PlaneTree base() const;
  int height() const { return frame_.height(); }

 private:
  Poset frame_;
  std::vector<ElementId> tops_order_;
  std::vector<ElementId> saw_nodes_;
  ElementSet tree_part_;
};

/// Adds saw nodes named `<prefix><i>` (1-based). Throws PreconditionError when
/// the tree has fewer than two tops or height 0, or when a name collides.
SawedTree build_sawed_tree(const PlaneTree& pt, const std::string& prefix = "s");

/// d = (d_1, d_2): rational abscissa and integer height per element.
struct PlaneDrawing {
  std::vector<Rational> x;
  std::vector<int> y;
};

/// Tops at 0, 1, ..., k-1 in plane order; inner nodes at the midpoint of
/// their children's span; saw s_i at the midpoint of t_i and t_{i+1}.
/// Every drawing invariant is checked before returning.
PlaneDrawing plane_drawing(const PlaneTree& pt);
PlaneDrawing plane_drawing(const SawedTree& st);

struct DrawingCheck {
  bool pass = true;
  std::string reason;
};

/// Injective; y = height; Hasse edges meet only at shared endpoints; the
/// listed tops appear left to right.
DrawingCheck check_plane_drawing(const Poset& p, const PlaneDrawing& d,
                                 const std::vector<ElementId>& tops_order);

/// Closed segments [a,b] and [c,d] intersect (exact orientation predicates).
bool segments_intersect(const Rational& ax, const Rational& ay, const Rational& bx,
                        const Rational& by, const Rational& cx, const Rational& cy,
                        const Rational& dx, const Rational& dy);

/// Path a_0 = s, ..., a_m = t inside ⇑⊥ with ⇑a_i = ∅ for even i and
/// ⇑a_i = {a_{i-1}, a_{i+1}} for odd i. Requires F rooted, height > 1 and PL.
std::vector<ElementId> zigzag_path(const Poset& frame, ElementId s, ElementId t);

/// Re-checks the two zigzag clauses literally; returns an empty string on success.
std::string check_zigzag(const Poset& frame, const std::vector<ElementId>& path);

struct Reduction {
  SawedTree tree;
  /// Surjective p-morphism from tree.frame() onto the input frame.
  PosetMap map;
};

/// Every rooted PL frame of height n >= 2 is a p-morphic image of a sawed
/// tree of height n. Throws PreconditionError when the input is not rooted,
/// fails PL or has height < 2; throws InvariantError if the output fails verification.
Reduction reduce_to_sawed_tree(const Poset& frame);

}  // namespace polyframe

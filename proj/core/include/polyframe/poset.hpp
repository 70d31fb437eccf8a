#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyframe {

using ElementId = std::size_t;

/// Subset of a poset's elements, indexed by ElementId.
using ElementSet = boost::dynamic_bitset<>;

std::vector<ElementId> members(const ElementSet& set);

/// A finite partial order with named elements: the Kripke frame.
///
/// Elements are stored sorted by name, so ElementId order is the
/// lexicographic name order and every search that iterates ids in
/// increasing order breaks ties lexicographically. Input order pairs may
/// be redundant; they are closed transitively and reduced to the Hasse
/// diagram. Cycles are rejected.
class Poset {
 public:
  Poset() = default;

  /// `order` lists pairs (lower, upper) meaning lower < upper.
  static Poset from_relations(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& order);

  /// Same as from_relations with index pairs into `names`.
  static Poset from_index_relations(std::vector<std::string> names,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& order);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(ElementId x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<ElementId> find(std::string_view name) const;
  /// Throws PosetError for unknown names.
  ElementId at(std::string_view name) const;

  bool leq(ElementId x, ElementId y) const { return up_[x].test(y); }
  bool less(ElementId x, ElementId y) const { return x != y && up_[x].test(y); }
  bool comparable(ElementId x, ElementId y) const { return leq(x, y) || leq(y, x); }

  /// ↑x and ↓x.
  const ElementSet& up(ElementId x) const { return up_.at(x); }
  const ElementSet& down(ElementId x) const { return down_.at(x); }
  /// ⇑x and ⇓x.
  ElementSet strict_up(ElementId x) const;
  ElementSet strict_down(ElementId x) const;

  ElementSet upset(const ElementSet& s) const;
  ElementSet downset(const ElementSet& s) const;
  bool is_upset(const ElementSet& s) const { return upset(s) == s; }

  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet full_set() const;
  ElementSet set_of(const std::vector<ElementId>& xs) const;
  ElementSet set_of_names(const std::vector<std::string>& xs) const;

  /// Hasse diagram: (lower, upper) immediate-successor pairs.
  const std::vector<std::pair<ElementId, ElementId>>& covers() const noexcept { return covers_; }
  const std::vector<ElementId>& upper_covers(ElementId x) const { return upper_covers_.at(x); }
  const std::vector<ElementId>& lower_covers(ElementId x) const { return lower_covers_.at(x); }

  /// Longest chain length minus one. Throws PreconditionError on the empty poset.
  int height() const;
  int height_of(ElementId x) const { return height_of_.at(x); }
  int depth_of(ElementId x) const { return depth_of_.at(x); }

  std::vector<ElementId> tops() const;
  std::optional<ElementId> root() const;
  bool is_rooted() const { return root().has_value(); }

  /// Elements such that every strict predecessor comes first.
  const std::vector<ElementId>& linear_extension() const noexcept { return linear_extension_; }

  /// Zigzag-connected components of the subposet on `s`, each sorted, in order of least member.
  std::vector<ElementSet> components(const ElementSet& s) const;
  std::vector<ElementSet> components() const { return components(full_set()); }

  /// Induced subposet. `ids`, when given, receives the original id of each new element.
  Poset restrict(const ElementSet& s, std::vector<ElementId>* ids = nullptr) const;

  bool is_chain(const ElementSet& s) const;

  /// Every nonempty chain, each listed bottom to top.
  std::vector<std::vector<ElementId>> chains() const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.covers_ == b.covers_;
  }

 private:
  void finalize();

  std::vector<std::string> names_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
  std::vector<std::pair<ElementId, ElementId>> covers_;
  std::vector<std::vector<ElementId>> upper_covers_;
  std::vector<std::vector<ElementId>> lower_covers_;
  std::vector<int> height_of_;
  std::vector<int> depth_of_;
  std::vector<ElementId> linear_extension_;
};

/// Order isomorphism test by name-independent backtracking; returns the
/// bijection a -> b when one exists.
std::optional<std::vector<ElementId>> find_isomorphism(const Poset& a, const Poset& b);

}  // namespace polyframe

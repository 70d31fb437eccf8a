#include "polyframe/poset.hpp"

#include "polyframe/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace polyframe {

std::vector<ElementId> members(const ElementSet& set) {
  std::vector<ElementId> out;
  for (auto i = set.find_first(); i != ElementSet::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

Poset Poset::from_relations(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& order) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw PosetError("empty element name");
    if (!index.emplace(names[i], i).second) throw PosetError("duplicate element '" + names[i] + "'");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(order.size());
  for (const auto& [a, b] : order) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw PosetError("unknown element '" + a + "'");
    if (ib == index.end()) throw PosetError("unknown element '" + b + "'");
    pairs.emplace_back(ia->second, ib->second);
  }
  return from_index_relations(std::move(names), pairs);
}

Poset Poset::from_index_relations(std::vector<std::string> names,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& order) {
  const std::size_t n = names.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  std::vector<std::size_t> rank_of(n);
  for (std::size_t r = 0; r < n; ++r) rank_of[perm[r]] = r;

  Poset p;
  p.names_.resize(n);
  for (std::size_t r = 0; r < n; ++r) p.names_[r] = names[perm[r]];
  for (std::size_t r = 1; r < n; ++r) {
    if (p.names_[r] == p.names_[r - 1]) throw PosetError("duplicate element '" + p.names_[r] + "'");
    if (p.names_[r].empty()) throw PosetError("empty element name");
  }
  if (n == 1 && p.names_[0].empty()) throw PosetError("empty element name");

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (auto [a, b] : order) {
    if (a >= n || b >= n) throw PosetError("order pair refers to an unknown element");
    auto ra = rank_of[a];
    auto rb = rank_of[b];
    if (ra == rb) throw PosetError("cycle: '" + p.names_[ra] + "' is listed below itself");
    succ[ra].push_back(rb);
    ++indegree[rb];
  }

  // Kahn's algorithm with smallest-id tie breaking.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    auto x = ready.top();
    ready.pop();
    topo.push_back(x);
    for (auto y : succ[x]) {
      if (--indegree[y] == 0) ready.push(y);
    }
  }
  if (topo.size() != n) {
    std::string where;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        where = p.names_[i];
        break;
      }
    }
    throw PosetError("cycle in order relation through '" + where + "'");
  }

  p.up_.assign(n, ElementSet(n));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto x = *it;
    p.up_[x].set(x);
    for (auto y : succ[x]) p.up_[x] |= p.up_[y];
  }
  p.linear_extension_ = std::move(topo);
  p.finalize();
  return p;
}

void Poset::finalize() {
  const std::size_t n = names_.size();
  down_.assign(n, ElementSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = up_[x].find_first(); y != ElementSet::npos; y = up_[x].find_next(y)) down_[y].set(x);
  }
  upper_covers_.assign(n, {});
  lower_covers_.assign(n, {});
  covers_.clear();
  for (std::size_t x = 0; x < n; ++x) {
    ElementSet above = strict_up(x);
    ElementSet reach(n);
    for (auto z = above.find_first(); z != ElementSet::npos; z = above.find_next(z)) reach |= strict_up(z);
    ElementSet immediate = above - reach;
    for (auto y = immediate.find_first(); y != ElementSet::npos; y = immediate.find_next(y)) {
      upper_covers_[x].push_back(y);
      lower_covers_[y].push_back(x);
      covers_.emplace_back(x, y);
    }
  }
  height_of_.assign(n, 0);
  for (auto x : linear_extension_) {
    for (auto y : upper_covers_[x]) height_of_[y] = std::max(height_of_[y], height_of_[x] + 1);
  }
  depth_of_.assign(n, 0);
  for (auto it = linear_extension_.rbegin(); it != linear_extension_.rend(); ++it) {
    for (auto y : upper_covers_[*it]) depth_of_[*it] = std::max(depth_of_[*it], depth_of_[y] + 1);
  }
}

std::optional<ElementId> Poset::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<ElementId>(it - names_.begin());
}

ElementId Poset::at(std::string_view name) const {
  auto id = find(name);
  if (!id) throw PosetError("unknown element '" + std::string(name) + "'");
  return *id;
}

ElementSet Poset::strict_up(ElementId x) const {
  ElementSet s = up_.at(x);
  s.reset(x);
  return s;
}

ElementSet Poset::strict_down(ElementId x) const {
  ElementSet s = down_.at(x);
  s.reset(x);
  return s;
}

ElementSet Poset::upset(const ElementSet& s) const {
  if (s.size() != size()) throw PosetError("element set does not match the poset");
  ElementSet out(size());
  for (auto x = s.find_first(); x != ElementSet::npos; x = s.find_next(x)) out |= up_[x];
  return out;
}

ElementSet Poset::downset(const ElementSet& s) const {
  if (s.size() != size()) throw PosetError("element set does not match the poset");
  ElementSet out(size());
  for (auto x = s.find_first(); x != ElementSet::npos; x = s.find_next(x)) out |= down_[x];
  return out;
}

ElementSet Poset::full_set() const {
  ElementSet s(size());
  s.set();
  return s;
}

ElementSet Poset::set_of(const std::vector<ElementId>& xs) const {
  ElementSet s(size());
  for (auto x : xs) {
    if (x >= size()) throw PosetError("element id out of range");
    s.set(x);
  }
  return s;
}

ElementSet Poset::set_of_names(const std::vector<std::string>& xs) const {
  ElementSet s(size());
  for (const auto& x : xs) s.set(at(x));
  return s;
}

int Poset::height() const {
  if (empty()) throw PreconditionError("height of the empty poset is undefined");
  return *std::max_element(height_of_.begin(), height_of_.end());
}

std::vector<ElementId> Poset::tops() const {
  std::vector<ElementId> out;
  for (std::size_t x = 0; x < size(); ++x) {
    if (upper_covers_[x].empty()) out.push_back(x);
  }
  return out;
}

std::optional<ElementId> Poset::root() const {
  for (std::size_t x = 0; x < size(); ++x) {
    if (up_[x].count() == size()) return x;
  }
  return std::nullopt;
}

std::vector<ElementSet> Poset::components(const ElementSet& s) const {
  std::vector<ElementSet> out;
  ElementSet seen(size());
  for (auto start = s.find_first(); start != ElementSet::npos; start = s.find_next(start)) {
    if (seen.test(start)) continue;
    ElementSet comp(size());
    std::vector<ElementId> stack{start};
    comp.set(start);
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ElementSet next = (up_[x] | down_[x]) & s;
      next -= comp;
      for (auto y = next.find_first(); y != ElementSet::npos; y = next.find_next(y)) {
        comp.set(y);
        stack.push_back(y);
      }
    }
    seen |= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

Poset Poset::restrict(const ElementSet& s, std::vector<ElementId>* ids) const {
  auto keep = members(s);
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (auto x : keep) names.push_back(names_[x]);
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (i != j && up_[keep[i]].test(keep[j])) order.emplace_back(i, j);
    }
  }
  // keep is already in name order, so new ids coincide with positions in keep
  if (ids) *ids = keep;
  return from_index_relations(std::move(names), order);
}

bool Poset::is_chain(const ElementSet& s) const {
  auto xs = members(s);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (!comparable(xs[i], xs[j])) return false;
    }
  }
  return true;
}

std::vector<std::vector<ElementId>> Poset::chains() const {
  std::vector<std::vector<ElementId>> out;
  std::vector<ElementId> current;
  auto extend = [&](auto&& self, ElementId last) -> void {
    out.push_back(current);
    ElementSet above = strict_up(last);
    for (auto y = above.find_first(); y != ElementSet::npos; y = above.find_next(y)) {
      current.push_back(y);
      self(self, y);
      current.pop_back();
    }
  };
  for (std::size_t x = 0; x < size(); ++x) {
    current.assign(1, x);
    extend(extend, x);
  }
  return out;
}

std::optional<std::vector<ElementId>> find_isomorphism(const Poset& a, const Poset& b) {
  const std::size_t n = a.size();
  if (n != b.size() || a.covers().size() != b.covers().size()) return std::nullopt;
  auto signature = [](const Poset& p, ElementId x) {
    return std::tuple(p.height_of(x), p.depth_of(x), p.up(x).count(), p.down(x).count());
  };
  std::vector<ElementId> map(n);
  std::vector<bool> used(n, false);
  const auto& order = a.linear_extension();
  auto assign = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    auto x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || signature(a, x) != signature(b, y)) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < k && consistent; ++j) {
        auto w = order[j];
        consistent = a.leq(w, x) == b.leq(map[w], y) && a.leq(x, w) == b.leq(y, map[w]);
      }
      if (!consistent) continue;
      used[y] = true;
      map[x] = y;
      if (self(self, k + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return map;
}

}  // namespace polyframe

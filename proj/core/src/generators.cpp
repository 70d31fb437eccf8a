#include "polyframe/generators.hpp"

#include "polyframe/error.hpp"
#include "polyframe/frames.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace polyframe {

Poset random_poset(std::size_t size, double density, std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < size; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::size_t> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution related(density);
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (related(rng)) order.emplace_back(perm[i], perm[j]);
    }
  }
  return Poset::from_index_relations(std::move(names), order);
}

Poset with_root(const Poset& p, const std::string& root_name) {
  if (p.find(root_name)) throw PreconditionError("root name " + root_name + " is already used");
  std::vector<std::string> names = p.names();
  std::vector<std::pair<std::string, std::string>> order;
  for (auto [a, b] : p.covers()) order.emplace_back(p.name(a), p.name(b));
  for (const auto& n : p.names()) order.emplace_back(root_name, n);
  names.push_back(root_name);
  return Poset::from_relations(std::move(names), order);
}

PlaneTree random_plane_tree(int height, int max_children, std::mt19937_64& rng) {
  if (height < 1 || max_children < 1) throw PreconditionError("plane tree needs height >= 1 and children >= 1");
  if (max_children == 1) throw PreconditionError("a tree with at most one child per node has a single top");
  std::uniform_int_distribution<int> fanout(1, max_children);
  while (true) {
    // children[i] in plane order; node 0 is the root
    std::vector<std::vector<std::size_t>> children(1);
    std::vector<std::size_t> level{0};
    for (int h = 0; h < height; ++h) {
      std::vector<std::size_t> next;
      for (auto v : level) {
        int c = fanout(rng);
        for (int i = 0; i < c; ++i) {
          children[v].push_back(children.size());
          next.push_back(children.size());
          children.emplace_back();
        }
      }
      level = std::move(next);
    }
    if (level.size() < 2) continue;
    const std::size_t width = std::to_string(children.size() - 1).size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < children.size(); ++i) names.push_back(fmt::format("n{:0>{}}", i, width));
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t v = 0; v < children.size(); ++v) {
      for (auto c : children[v]) order.emplace_back(v, c);
    }
    PlaneTree pt{Poset::from_index_relations(names, order), {}};
    // zero-padded names keep ids in creation order, which is left to right per level
    pt.tops_order = level;
    pt.validate();
    return pt;
  }
}

SawedTree random_sawed_tree(int height, int max_children, std::mt19937_64& rng) {
  if (height < 2) throw PreconditionError("a sawed tree has height at least 2");
  return build_sawed_tree(random_plane_tree(height - 1, max_children, rng));
}

Poset random_pl_frame(int height, std::size_t max_size, std::mt19937_64& rng) {
  if (height < 2) throw PreconditionError("random PL frames have height at least 2");
  if (max_size < static_cast<std::size_t>(height) + 1) throw PreconditionError("size budget below height + 1");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    // Build from the tops down: each new element sits below a chosen set
    // containing at least one element of the previous depth.
    std::size_t budget = max_size - 1;
    std::vector<std::vector<std::size_t>> by_depth(static_cast<std::size_t>(height));
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> order;
    bool ok = true;
    for (int d = 0; d < height && ok; ++d) {
      std::size_t levels_left = static_cast<std::size_t>(height - d);
      std::size_t room = budget - (levels_left - 1);
      std::uniform_int_distribution<std::size_t> count_dist(1, std::min<std::size_t>(3, room));
      std::size_t count = count_dist(rng);
      budget -= count;
      for (std::size_t i = 0; i < count; ++i) {
        std::size_t id = names.size();
        names.push_back(fmt::format("d{}_{}", d, i));
        by_depth[static_cast<std::size_t>(d)].push_back(id);
        if (d == 0) continue;
        const auto& prev = by_depth[static_cast<std::size_t>(d - 1)];
        std::uniform_int_distribution<std::size_t> pick(0, prev.size() - 1);
        std::size_t first = prev[pick(rng)];
        order.emplace_back(id, first);
        std::size_t extra = d == 1 ? std::uniform_int_distribution<int>(0, 1)(rng) : std::uniform_int_distribution<int>(0, 2)(rng);
        for (std::size_t e = 0; e < extra; ++e) {
          std::uniform_int_distribution<int> depth_pick(0, d - 1);
          const auto& pool = by_depth[static_cast<std::size_t>(depth_pick(rng))];
          std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
          std::size_t other = pool[any(rng)];
          if (other != first) order.emplace_back(id, other);
        }
      }
    }
    std::size_t root = names.size();
    names.push_back("root");
    for (std::size_t i = 0; i < root; ++i) order.emplace_back(root, i);
    // order pairs are (lower, upper) already
    Poset p = Poset::from_index_relations(names, order);
    if (p.height() != height || p.size() > max_size) continue;
    if (satisfies_pl(p, height).pass()) return p;
  }
  throw InvariantError("could not sample a PL frame within the attempt budget");
}

}  // namespace polyframe

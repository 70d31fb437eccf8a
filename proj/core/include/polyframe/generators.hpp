#pragma once

#include "polyframe/poset.hpp"
#include "polyframe/reduction.hpp"

#include <random>

namespace polyframe {

/// Random poset on `size` elements named e0..: each pair i < j of a random
/// linear extension is related with probability `density`, then closed.
Poset random_poset(std::size_t size, double density, std::mt19937_64& rng);

/// Adds a fresh least element named `root_name`.
Poset with_root(const Poset& p, const std::string& root_name = "r");

/// Random plane tree of the given height whose tops all sit at that height;
/// internal nodes get 1..max_children children and the tree has at least two tops.
PlaneTree random_plane_tree(int height, int max_children, std::mt19937_64& rng);

/// build_sawed_tree(random_plane_tree(height - 1, ...)).
SawedTree random_sawed_tree(int height, int max_children, std::mt19937_64& rng);

/// Random rooted PL frame of exactly the given height (>= 2) with at most
/// `max_size` elements, built level by level from the tops down.
Poset random_pl_frame(int height, std::size_t max_size, std::mt19937_64& rng);

}  // namespace polyframe

#pragma once

#include "polyframe/rational.hpp"

#include <optional>
#include <vector>

namespace polyframe {

using Matrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gauss-Jordan elimination.
std::size_t rank(Matrix m);

/// Indices of a maximal linearly independent subset of the rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Some solution of a x = b, or nullopt when inconsistent. When the system is
/// underdetermined, free variables are set to zero.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

/// Dimension of the affine hull of `points`; throws GeometryError on empty input.
int affine_rank(const std::vector<Point>& points);

bool affinely_independent(const std::vector<Point>& points);

}  // namespace polyframe

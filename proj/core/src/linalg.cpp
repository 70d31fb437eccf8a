#include "polyframe/linalg.hpp"

#include "polyframe/error.hpp"

namespace polyframe {

namespace {

// Row-reduces m in place; returns the pivot columns.
std::vector<std::size_t> eliminate(Matrix& m, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  return eliminate(m, m.front().size()).size();
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  Matrix basis;
  for (std::size_t i = 0; i < m.size(); ++i) {
    basis.push_back(m[i]);
    if (rank(basis) == basis.size()) {
      chosen.push_back(i);
    } else {
      basis.pop_back();
    }
  }
  return chosen;
}

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  if (a.size() != b.size()) throw PreconditionError("solve: row count mismatch");
  std::size_t columns = a.empty() ? 0 : a.front().size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != columns) throw PreconditionError("solve: ragged matrix");
    a[i].push_back(b[i]);
  }
  auto pivots = eliminate(a, columns);
  for (std::size_t r = pivots.size(); r < a.size(); ++r) {
    if (a[r][columns] != 0) return std::nullopt;
  }
  std::vector<Rational> x(columns);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][columns];
  return x;
}

int affine_rank(const std::vector<Point>& points) {
  if (points.empty()) throw GeometryError("affine rank of an empty point set");
  Matrix m;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != points[0].size()) throw GeometryError("points of different dimensions");
    m.push_back(points[i] - points[0]);
  }
  return static_cast<int>(rank(std::move(m)));
}

bool affinely_independent(const std::vector<Point>& points) {
  return !points.empty() && affine_rank(points) == static_cast<int>(points.size()) - 1;
}

}  // namespace polyframe

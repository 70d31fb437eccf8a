#include "polyframe/lp.hpp"

#include "polyframe/error.hpp"

#include <limits>

namespace polyframe {

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
  if (coefficients.size() > num_variables_) throw PreconditionError("constraint has too many coefficients");
  rows_.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::set_objective(std::vector<Rational> coefficients) {
  if (coefficients.size() > num_variables_) throw PreconditionError("objective has too many coefficients");
  objective_ = std::move(coefficients);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Tableau {
  std::vector<std::vector<Rational>> rows;  // last entry is the right-hand side
  std::vector<std::size_t> basis;
  std::vector<Rational> cost;  // reduced costs; last entry is minus the objective value
  std::size_t columns = 0;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational factor = rows[i][c];
      for (std::size_t j = 0; j <= columns; ++j) rows[i][j] -= factor * rows[r][j];
    }
    if (cost[c] != 0) {
      Rational factor = cost[c];
      for (std::size_t j = 0; j <= columns; ++j) cost[j] -= factor * rows[r][j];
    }
    basis[r] = c;
  }

  void load_objective(const std::vector<Rational>& c) {
    cost.assign(columns + 1, Rational(0));
    for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational cb = basis[i] < c.size() ? c[basis[i]] : Rational(0);
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= columns; ++j) cost[j] -= cb * rows[i][j];
    }
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(std::size_t allowed_columns) {
    while (true) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < allowed_columns; ++j) {
        if (cost[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][columns] / rows[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution LinearProgram::maximize() const {
  const std::size_t n = num_variables_;
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const auto& row : rows_) {
    bool flip = row.rhs < 0;
    Relation rel = row.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    if (rel != Relation::Equal) ++slacks;
    if (rel != Relation::LessEqual) ++artificials;
  }
  Tableau t;
  t.columns = n + slacks + artificials;
  std::size_t next_slack = n;
  std::size_t next_artificial = n + slacks;
  for (const auto& row : rows_) {
    std::vector<Rational> r(t.columns + 1);
    bool flip = row.rhs < 0;
    Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < row.coefficients.size(); ++j) r[j] = sign * row.coefficients[j];
    r[t.columns] = sign * row.rhs;
    Relation rel = row.relation;
    if (flip && rel != Relation::Equal) rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    std::size_t basic = kNone;
    if (rel == Relation::LessEqual) {
      r[next_slack] = 1;
      basic = next_slack++;
    } else {
      if (rel == Relation::GreaterEqual) r[next_slack++] = -1;
      r[next_artificial] = 1;
      basic = next_artificial++;
    }
    t.rows.push_back(std::move(r));
    t.basis.push_back(basic);
  }

  const std::size_t first_artificial = n + slacks;
  if (artificials > 0) {
    std::vector<Rational> phase_one(t.columns);
    for (std::size_t j = first_artificial; j < t.columns; ++j) phase_one[j] = -1;
    t.load_objective(phase_one);
    t.optimize(t.columns);
    if (t.cost[t.columns] != 0) return LpSolution{LpStatus::Infeasible, Rational(0), {}};
    // Drive remaining artificial variables out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (t.rows[i][j] != 0) {
          col = j;
          break;
        }
      }
      if (col == kNone) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  t.load_objective(objective_);
  if (!t.optimize(first_artificial)) return LpSolution{LpStatus::Unbounded, Rational(0), {}};
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.objective = -t.cost[t.columns];
  sol.values.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < n) sol.values[t.basis[i]] = t.rows[i][t.columns];
  }
  return sol;
}

}  // namespace polyframe

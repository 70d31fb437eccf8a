#pragma once

#include "polyframe/rational.hpp"

#include <cstddef>
#include <vector>

namespace polyframe {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> values;
};

/// Exact rational linear program: maximize c·x subject to linear
/// constraints and x >= 0. Two-phase tableau simplex under Bland's rule,
/// so every solve terminates.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_variables = 0) : num_variables_(num_variables) {}

  std::size_t add_variable() { return num_variables_++; }
  std::size_t num_variables() const noexcept { return num_variables_; }

  /// Dense coefficients; shorter vectors are zero-padded.
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  void set_objective(std::vector<Rational> coefficients);

  LpSolution maximize() const;

 private:
  struct Row {
    std::vector<Rational> coefficients;
    Relation relation;
    Rational rhs;
  };
  std::size_t num_variables_;
  std::vector<Row> rows_;
  std::vector<Rational> objective_;
};

}  // namespace polyframe

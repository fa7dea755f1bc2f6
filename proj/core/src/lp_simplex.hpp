#pragma once

#include <vector>

namespace remsim::detail {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded, iteration_limit };
  Status status = Status::infeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// Dense two-phase simplex on the dictionary form:
///   maximize c'x  subject to  A x <= b,  x >= 0.
/// Negative entries of b are handled by a single auxiliary variable in
/// phase one. Bland's rule throughout, so degenerate problems terminate.
LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, int max_pivots = 50000);

}  // namespace remsim::detail

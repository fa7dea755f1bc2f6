#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

namespace remsim {

enum class Goal { sum_power, max_min, log_sum };

std::string to_string(Goal g);
Goal goal_from_string(const std::string& s);

/// maximize goal(p)  s.t.  W p <= i_max,  0 <= p <= p_max.
/// W is victims x indoor BSs, linear gain; i_max and p_max in mW.
struct PowerProblem {
  Eigen::MatrixXd w;
  Eigen::VectorXd i_max;
  double p_max = 0.0;
  Goal goal = Goal::sum_power;

  /// Throws ConfigError on shape mismatch, negative/NaN entries or p_max <= 0.
  void validate() const;
};

enum class SolverStatus { optimal, trivial };

struct PowerAllocation {
  Eigen::VectorXd p_tx;
  double objective_value = 0.0;
  SolverStatus status = SolverStatus::optimal;
  double kkt_residual = 0.0;  // log-sum only
  int iterations = 0;
};

/// Goal function evaluated at p (natural log for log_sum).
double objective(Goal goal, const Eigen::VectorXd& p);

/// W p <= i_max (1 + rel_tol) + abs_tol and 0 <= p <= p_max (1 + 1e-12).
bool is_feasible(const PowerProblem& problem, const Eigen::VectorXd& p, double rel_tol = 1e-9,
                 double abs_tol = 1e-9);

/// LP; among optimal points the lexicographically smallest one is returned.
PowerAllocation solve_sum_power(const PowerProblem& problem);
/// LP on an auxiliary level, then sum-power on the remaining slack with
/// every BS held at or above that level.
PowerAllocation solve_max_min(const PowerProblem& problem);
/// sum log(1 + p) by a log-barrier Newton method. Throws SolverError if the
/// relative KKT residual does not drop below 1e-8.
PowerAllocation solve_log_sum(const PowerProblem& problem);
/// Dispatch on problem.goal.
PowerAllocation solve(const PowerProblem& problem);

/// Grid search over [0, p_max]^alpha for alpha <= 3 and at most 200 points
/// per axis. The last coordinate is not gridded: every goal is monotone in
/// each coordinate, so it is set to its largest feasible value. The search
/// box is then shrunk `refinements` times onto the grid points within one
/// neighbour difference of the best value.
PowerAllocation brute_force_power_oracle(const PowerProblem& problem, int grid_points_per_dim,
                                         int refinements = 8);

/// Plain-text dump:
///   remsim-power-problem 1
///   goal <name>
///   p_max <mW>
///   size <N> <alpha>
///   N rows of alpha W entries
///   one row of N i_max entries
void write_problem(const PowerProblem& problem, const std::filesystem::path& path);
PowerProblem read_problem(const std::filesystem::path& path);

}  // namespace remsim

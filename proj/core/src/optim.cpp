#include "remsim/optim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "lp_simplex.hpp"
#include "remsim/error.hpp"

namespace remsim {
namespace {

using detail::LpResult;
using detail::solve_lp;
using Rows = std::vector<std::vector<double>>;

// Problem in x = p / p_max with every interference row divided by its limit:
// rows . x <= 1, 0 <= x <= 1. BSs that touch a zero-limit victim are pinned
// to zero and dropped from the free set.
struct Scaled {
  std::vector<int> free;
  Rows rows;
};

Scaled scale(const PowerProblem& pr) {
  pr.validate();
  const auto n = pr.w.rows();
  const auto alpha = pr.w.cols();
  std::vector<bool> pinned(static_cast<std::size_t>(alpha), false);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (pr.i_max[r] > 0.0) continue;
    for (Eigen::Index a = 0; a < alpha; ++a) {
      if (pr.w(r, a) > 0.0) pinned[a] = true;
    }
  }
  Scaled s;
  for (Eigen::Index a = 0; a < alpha; ++a) {
    if (!pinned[a]) s.free.push_back(static_cast<int>(a));
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!(pr.i_max[r] > 0.0)) continue;
    std::vector<double> row(s.free.size());
    bool any = false;
    for (std::size_t k = 0; k < s.free.size(); ++k) {
      row[k] = pr.w(r, s.free[k]) * pr.p_max / pr.i_max[r];
      any = any || row[k] > 0.0;
    }
    if (any) s.rows.push_back(std::move(row));
  }
  return s;
}

LpResult checked_lp(const Rows& a, const std::vector<double>& b, const std::vector<double>& c) {
  auto res = solve_lp(a, b, c);
  if (res.status != LpResult::Status::optimal) {
    throw SolverError("power LP did not reach an optimum (" + std::to_string(a.size()) + " rows, " +
                      std::to_string(c.size()) + " columns)");
  }
  return res;
}

// max sum x over the scaled polytope with x >= lower, then walk the optimal
// face towards its lexicographically smallest point.
std::vector<double> lex_max_sum(const Scaled& s, const std::vector<double>& lower) {
  const std::size_t k = s.free.size();
  Rows a = s.rows;
  std::vector<double> b(a.size(), 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> row(k, 0.0);
    row[j] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
    if (lower[j] > 0.0) {
      row[j] = -1.0;
      a.push_back(row);
      b.push_back(-lower[j]);
    }
  }
  const std::vector<double> ones(k, 1.0);
  const auto first = checked_lp(a, b, ones);
  const double z = first.value;
  a.push_back(std::vector<double>(k, -1.0));
  b.push_back(-(z - (1e-10 * z + 1e-14)));
  std::vector<double> x = first.x;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> c(k, 0.0);
    c[j] = -1.0;
    const auto res = checked_lp(a, b, c);
    x = res.x;
    std::vector<double> cap(k, 0.0);
    cap[j] = 1.0;
    a.push_back(cap);
    b.push_back(x[j] + 1e-12);
  }
  return x;
}

Eigen::VectorXd unscale(const PowerProblem& pr, const Scaled& s, const std::vector<double>& x) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(pr.w.cols());
  for (std::size_t k = 0; k < s.free.size(); ++k) p[s.free[k]] = std::clamp(x[k], 0.0, 1.0) * pr.p_max;
  // shave off round-off so the interference limits hold exactly
  const Eigen::VectorXd load = pr.w * p;
  double ratio = 0.0;
  for (Eigen::Index r = 0; r < load.size(); ++r) {
    if (pr.i_max[r] > 0.0) ratio = std::max(ratio, load[r] / pr.i_max[r]);
  }
  if (ratio > 1.0) p /= ratio;
  return p;
}

PowerAllocation finish(const PowerProblem& pr, Eigen::VectorXd p, SolverStatus status) {
  PowerAllocation out;
  out.p_tx = std::move(p);
  out.objective_value = objective(pr.goal, out.p_tx);
  out.status = status;
  return out;
}

void require_goal(const PowerProblem& pr, Goal g) {
  if (pr.goal != g) throw ConfigError("solver called with goal " + to_string(pr.goal));
}

}  // namespace

std::string to_string(Goal g) {
  switch (g) {
    case Goal::sum_power: return "sum_power";
    case Goal::max_min: return "max_min";
    case Goal::log_sum: return "log_sum";
  }
  return "?";
}

Goal goal_from_string(const std::string& s) {
  if (s == "sum_power") return Goal::sum_power;
  if (s == "max_min") return Goal::max_min;
  if (s == "log_sum") return Goal::log_sum;
  throw ConfigError("unknown goal '" + s + "'");
}

void PowerProblem::validate() const {
  if (w.rows() != i_max.size()) throw ConfigError("W rows must match the number of limits");
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max must be positive");
  if (!w.allFinite() || (w.size() > 0 && w.minCoeff() < 0.0)) {
    throw ConfigError("W entries must be finite and non-negative");
  }
  for (Eigen::Index r = 0; r < i_max.size(); ++r) {
    if (std::isnan(i_max[r])) throw ConfigError("interference limit is NaN");
    if (i_max[r] < 0.0) throw SolverError("infeasible: negative interference limit at row " + std::to_string(r));
  }
}

double objective(Goal goal, const Eigen::VectorXd& p) {
  if (p.size() == 0) return 0.0;
  switch (goal) {
    case Goal::sum_power: return p.sum();
    case Goal::max_min: return p.minCoeff();
    case Goal::log_sum: return p.array().log1p().sum();
  }
  return 0.0;
}

bool is_feasible(const PowerProblem& pr, const Eigen::VectorXd& p, double rel_tol, double abs_tol) {
  if (p.size() != pr.w.cols()) return false;
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    if (!(p[a] >= 0.0) || p[a] > pr.p_max * (1.0 + 1e-12)) return false;
  }
  const Eigen::VectorXd load = pr.w * p;
  for (Eigen::Index r = 0; r < load.size(); ++r) {
    if (load[r] > pr.i_max[r] * (1.0 + rel_tol) + abs_tol) return false;
  }
  return true;
}

PowerAllocation solve_sum_power(const PowerProblem& pr) {
  require_goal(pr, Goal::sum_power);
  const Scaled s = scale(pr);
  if (s.free.empty()) return finish(pr, Eigen::VectorXd::Zero(pr.w.cols()), SolverStatus::trivial);
  if (s.rows.empty()) {
    return finish(pr, unscale(pr, s, std::vector<double>(s.free.size(), 1.0)), SolverStatus::trivial);
  }
  const auto x = lex_max_sum(s, std::vector<double>(s.free.size(), 0.0));
  return finish(pr, unscale(pr, s, x), SolverStatus::optimal);
}

PowerAllocation solve_max_min(const PowerProblem& pr) {
  require_goal(pr, Goal::max_min);
  const Scaled s = scale(pr);
  const std::size_t k = s.free.size();
  if (k == 0) return finish(pr, Eigen::VectorXd::Zero(pr.w.cols()), SolverStatus::trivial);
  if (s.rows.empty()) return finish(pr, unscale(pr, s, std::vector<double>(k, 1.0)), SolverStatus::trivial);
  // variables (x_1..x_k, t): max t with t <= x_j. Pinned BSs sit at zero
  // whatever happens, so the level is taken over the free ones.
  Rows a;
  std::vector<double> b;
  for (const auto& row : s.rows) {
    auto r = row;
    r.push_back(0.0);
    a.push_back(std::move(r));
    b.push_back(1.0);
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> r(k + 1, 0.0);
    r[j] = 1.0;
    a.push_back(r);
    b.push_back(1.0);
    r[j] = -1.0;
    r[k] = 1.0;
    a.push_back(std::move(r));
    b.push_back(0.0);
  }
  std::vector<double> c(k + 1, 0.0);
  c[k] = 1.0;
  const double level = checked_lp(a, b, c).value;
  const double floor = std::max(0.0, level * (1.0 - 1e-10));
  const auto x = lex_max_sum(s, std::vector<double>(k, floor));
  return finish(pr, unscale(pr, s, x), SolverStatus::optimal);
}

PowerAllocation solve_log_sum(const PowerProblem& pr) {
  require_goal(pr, Goal::log_sum);
  const Scaled s = scale(pr);
  const auto k = static_cast<Eigen::Index>(s.free.size());
  if (k == 0) return finish(pr, Eigen::VectorXd::Zero(pr.w.cols()), SolverStatus::trivial);
  if (s.rows.empty()) {
    return finish(pr, unscale(pr, s, std::vector<double>(s.free.size(), 1.0)), SolverStatus::trivial);
  }
  // Primal-dual interior point on  min -sum log(1 + u x)  s.t.  G x <= h,
  // where G stacks the interference rows, x <= 1 and -x <= 0.
  const auto r = static_cast<Eigen::Index>(s.rows.size());
  const Eigen::Index m = r + 2 * k;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, k);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = s.rows[i][j];
    h[i] = 1.0;
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    g(r + j, j) = 1.0;
    h[r + j] = 1.0;
    g(r + k + j, j) = -1.0;
  }
  const double u = pr.p_max;
  const double max_row = g.topRows(r).rowwise().sum().maxCoeff();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(k, 0.5 * std::min(1.0, 1.0 / max_row));
  Eigen::VectorXd sl = h - g * x;
  Eigen::VectorXd z = sl.cwiseInverse();

  double residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = x;
  int iterations = 0;
  for (; iterations < 200; ++iterations) {
    const Eigen::ArrayXd denom = 1.0 + u * x.array();
    const Eigen::VectorXd grad = (-u / denom).matrix();
    const Eigen::VectorXd r_dual = grad + g.transpose() * z;
    const double mu = sl.dot(z) / static_cast<double>(m);
    const double scale_ref = std::max(1.0, grad.lpNorm<Eigen::Infinity>());
    const double res = std::max(r_dual.lpNorm<Eigen::Infinity>(), (sl.array() * z.array()).maxCoeff()) / scale_ref;
    if (!std::isfinite(res)) break;
    if (res < residual) {
      residual = res;
      best = x;
    }
    // the stationarity part bottoms out at round-off, so also stop once mu is negligible
    if (res < 1e-12 || mu < 1e-16) break;
    const double sigma = 0.1;
    const Eigen::VectorXd d = z.cwiseQuotient(sl);
    Eigen::MatrixXd lhs = g.transpose() * d.asDiagonal() * g;
    lhs.diagonal().array() += (u * u) / denom.square();
    const Eigen::VectorXd rhs = -grad - g.transpose() * (sigma * mu * sl.cwiseInverse());
    const Eigen::VectorXd dx = lhs.ldlt().solve(rhs);
    const Eigen::VectorXd ds = -g * dx;
    const Eigen::VectorXd dz = -z + (sigma * mu) * sl.cwiseInverse() + d.cwiseProduct(g * dx);
    double step = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (ds[i] < 0.0) step = std::min(step, 0.99 * sl[i] / -ds[i]);
      if (dz[i] < 0.0) step = std::min(step, 0.99 * z[i] / -dz[i]);
    }
    x += step * dx;
    sl += step * ds;
    z += step * dz;
  }
  if (!(residual < 1e-8)) {
    std::ostringstream msg;
    msg << "log-sum interior point did not converge: KKT residual " << residual << " after " << iterations
        << " iterations (" << r << " rows, " << k << " BSs)";
    throw SolverError(msg.str());
  }
  std::vector<double> xv(best.data(), best.data() + k);
  auto out = finish(pr, unscale(pr, s, xv), SolverStatus::optimal);
  out.kkt_residual = residual;
  out.iterations = iterations;
  return out;
}

PowerAllocation solve(const PowerProblem& pr) {
  switch (pr.goal) {
    case Goal::sum_power: return solve_sum_power(pr);
    case Goal::max_min: return solve_max_min(pr);
    case Goal::log_sum: return solve_log_sum(pr);
  }
  throw ConfigError("unknown goal");
}

PowerAllocation brute_force_power_oracle(const PowerProblem& pr, int grid, int refinements) {
  pr.validate();
  const auto alpha = pr.w.cols();
  if (alpha > 3) throw ConfigError("brute-force oracle supports at most 3 BSs");
  if (grid < 2 || grid > 200) throw ConfigError("brute-force grid must have 2..200 points per axis");
  if (alpha == 0) return finish(pr, Eigen::VectorXd(), SolverStatus::trivial);
  const auto n = pr.w.rows();
  const auto last = alpha - 1;

  // largest feasible value of the last coordinate, or -1
  auto best_last = [&](const Eigen::VectorXd& p) {
    double cap = pr.p_max;
    for (Eigen::Index r = 0; r < n; ++r) {
      double used = 0.0;
      for (Eigen::Index j = 0; j < last; ++j) used += pr.w(r, j) * p[j];
      const double rem = pr.i_max[r] - used;
      if (pr.w(r, last) > 0.0) {
        cap = std::min(cap, rem / pr.w(r, last));
      } else if (rem < -1e-12 * pr.i_max[r]) {
        return -1.0;
      }
    }
    return cap >= 0.0 ? cap : -1.0;
  };

  Eigen::VectorXd lo = Eigen::VectorXd::Zero(last);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(last, pr.p_max);
  Eigen::VectorXd best = Eigen::VectorXd::Zero(alpha);
  double best_val = -std::numeric_limits<double>::infinity();
  const double none = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd p(alpha);
  std::vector<double> val;
  for (int pass = 0; pass <= refinements; ++pass) {
    const Eigen::VectorXd step = (hi - lo) / static_cast<double>(grid - 1);
    const long points = last == 0 ? 1 : (last == 1 ? grid : static_cast<long>(grid) * grid);
    val.assign(static_cast<std::size_t>(points), none);
    auto coords = [&](long idx) {
      for (Eigen::Index j = 0; j < last; ++j) {
        p[j] = lo[j] + static_cast<double>(idx % grid) * step[j];
        idx /= grid;
      }
    };
    double pass_best = none;
    for (long idx = 0; idx < points; ++idx) {
      coords(idx);
      const double tail = best_last(p);
      if (tail < 0.0) continue;
      p[last] = tail;
      const double v = objective(pr.goal, p);
      val[static_cast<std::size_t>(idx)] = v;
      pass_best = std::max(pass_best, v);
      if (v > best_val) {
        best_val = v;
        best = p;
      }
    }
    if (last == 0 || pass_best == none) break;

    // After maximizing out the last coordinate the objective is concave, so
    // the grid point nearest the maximizer is within one neighbour step of
    // the grid maximum. Zoom onto every point that close.
    double delta = 0.0;
    for (long idx = 0; idx < points; ++idx) {
      const double v = val[static_cast<std::size_t>(idx)];
      if (v == none) continue;
      if (idx % grid + 1 < grid && val[static_cast<std::size_t>(idx + 1)] != none)
        delta = std::max(delta, std::abs(v - val[static_cast<std::size_t>(idx + 1)]));
      if (last == 2 && idx + grid < points && val[static_cast<std::size_t>(idx + grid)] != none)
        delta = std::max(delta, std::abs(v - val[static_cast<std::size_t>(idx + grid)]));
    }
    Eigen::VectorXd new_lo = hi, new_hi = lo;
    for (long idx = 0; idx < points; ++idx) {
      if (val[static_cast<std::size_t>(idx)] < pass_best - delta) continue;
      coords(idx);
      for (Eigen::Index j = 0; j < last; ++j) {
        new_lo[j] = std::min(new_lo[j], p[j]);
        new_hi[j] = std::max(new_hi[j], p[j]);
      }
    }
    for (Eigen::Index j = 0; j < last; ++j) {
      lo[j] = std::max(0.0, new_lo[j] - 2.0 * step[j]);
      hi[j] = std::min(pr.p_max, new_hi[j] + 2.0 * step[j]);
    }
  }
  if (!std::isfinite(best_val)) throw SolverError("brute-force oracle found no feasible point");
  return finish(pr, best, SolverStatus::optimal);
}

void write_problem(const PowerProblem& pr, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << std::setprecision(17);
  out << "remsim-power-problem 1\n";
  out << "goal " << to_string(pr.goal) << "\n";
  out << "p_max " << pr.p_max << "\n";
  out << "size " << pr.w.rows() << " " << pr.w.cols() << "\n";
  for (Eigen::Index r = 0; r < pr.w.rows(); ++r) {
    for (Eigen::Index c = 0; c < pr.w.cols(); ++c) out << (c ? " " : "") << pr.w(r, c);
    out << "\n";
  }
  for (Eigen::Index r = 0; r < pr.i_max.size(); ++r) out << (r ? " " : "") << pr.i_max[r];
  out << "\n";
}

PowerProblem read_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  auto fail = [&](const std::string& what) {
    throw ConfigError(path.string() + ": malformed problem file (" + what + ")");
  };
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "remsim-power-problem" || version != 1) fail("header");
  PowerProblem pr;
  std::string goal;
  if (!(in >> tag >> goal) || tag != "goal") fail("goal");
  pr.goal = goal_from_string(goal);
  if (!(in >> tag >> pr.p_max) || tag != "p_max") fail("p_max");
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> tag >> rows >> cols) || tag != "size" || rows < 0 || cols < 0) fail("size");
  pr.w.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!(in >> pr.w(r, c))) fail("W");
    }
  }
  pr.i_max.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!(in >> pr.i_max[r])) fail("i_max");
  }
  pr.validate();
  return pr;
}

}  // namespace remsim

#include "lp_simplex.hpp"

#include <cmath>
#include <limits>

namespace remsim::detail {
namespace {

constexpr double kEps = 1e-11;

class Dictionary {
 public:
  Dictionary(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
             const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        basic_(m_),
        nonbasic_(n_ + 1),
        d_(static_cast<std::size_t>(m_ + 2), std::vector<double>(static_cast<std::size_t>(n_ + 2), 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = n_ + i;
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;  // auxiliary variable of phase one
    d_[m_ + 1][n_] = 1.0;
  }

  LpResult solve(int max_pivots) {
    pivots_left_ = max_pivots;
    LpResult result;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      const auto phase1 = run(true);
      if (phase1 != LpResult::Status::optimal) {
        result.status = phase1 == LpResult::Status::iteration_limit ? phase1
                                                                    : LpResult::Status::infeasible;
        return result;
      }
      if (d_[m_ + 1][n_ + 1] < -1e-9) {
        result.status = LpResult::Status::infeasible;
        return result;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j) {
          if (std::abs(d_[i][j]) <= kEps) continue;
          if (s == -1 || nonbasic_[j] < nonbasic_[s]) s = j;
        }
        if (s != -1) pivot(i, s);
      }
    }
    const auto phase2 = run(false);
    result.status = phase2;
    if (phase2 != LpResult::Status::optimal) return result;
    result.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) result.x[basic_[i]] = d_[i][n_ + 1];
    }
    result.value = d_[m_][n_ + 1];
    return result;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = d_[i][s] * inv;
      if (f == 0.0) continue;
      for (int j = 0; j < n_ + 2; ++j) {
        if (j != s) d_[i][j] -= d_[r][j] * f;
      }
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) d_[i][s] *= -inv;
    }
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  LpResult::Status run(bool phase_one) {
    const int obj = phase_one ? m_ + 1 : m_;
    while (true) {
      // Bland: lowest-labelled improving column.
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (!phase_one && nonbasic_[j] == -1) continue;
        if (d_[obj][j] < -kEps && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == -1) return LpResult::Status::optimal;
      int r = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        const double ratio = d_[i][n_ + 1] / d_[i][s];
        if (r == -1 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basic_[i] < basic_[r])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == -1) return LpResult::Status::unbounded;
      if (--pivots_left_ < 0) return LpResult::Status::iteration_limit;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<std::vector<double>> d_;
  int pivots_left_ = 0;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, int max_pivots) {
  Dictionary dict(a, b, c);
  return dict.solve(max_pivots);
}

}  // namespace remsim::detail

#pragma once

#include <span>
#include <vector>

namespace remsim {

/// Soft-frequency-reuse power profile of one cell.
struct IcicMask {
  std::vector<double> weights;         // 4 on the boosted part, 1 elsewhere
  std::vector<double> per_rb_power_mw;
  int partition = 0;                   // boosted third: cell_index mod 3

  double total_mw() const;
};

/// Band split into three contiguous parts (remainder goes to the last one);
/// the cell's own part carries 4x the per-RB power of the others and the
/// whole profile is normalized to `total_power_mw`. A non-positive budget
/// yields an all-zero mask.
IcicMask icic_power_mask(int cell_index, double total_power_mw, int n_rb);

/// Flat profile, for runs with ICIC disabled.
IcicMask uniform_power_mask(double total_power_mw, int n_rb);

/// First RB of each of the three parts plus the end sentinel.
std::vector<int> icic_partition_bounds(int n_rb);

/// Per-UE exponential moving average of served rate (bit/s).
struct PfState {
  std::vector<double> average_rate;
  double smoothing = 0.5;

  PfState() = default;
  explicit PfState(std::size_t n_ue, double smoothing_ = 0.5)
      : average_rate(n_ue, 0.0), smoothing(smoothing_) {}
};

/// Row-major UE x RB matrix of instantaneous achievable rates.
struct RateMatrix {
  int n_ue = 0;
  int n_rb = 0;
  std::vector<double> data;

  RateMatrix() = default;
  RateMatrix(int ues, int rbs) : n_ue(ues), n_rb(rbs), data(static_cast<std::size_t>(ues) * rbs, 0.0) {}
  double& at(int ue, int rb) { return data[static_cast<std::size_t>(ue) * n_rb + rb]; }
  double at(int ue, int rb) const { return data[static_cast<std::size_t>(ue) * n_rb + rb]; }
};

inline constexpr int kUnassigned = -1;

/// Proportional-fair allocation for one cell and one tick. Each RB goes to
/// the UE maximizing rate / max(average, epsilon); ties go to the lower row
/// (callers order rows by UE id). RBs where nobody can transmit stay
/// unassigned. Returns, per RB, the winning row or kUnassigned.
std::vector<int> pf_schedule(const RateMatrix& rates, const PfState& state, double epsilon = 1.0);

/// avg <- (1 - s) * avg + s * served for every UE.
PfState update_average_rate(PfState state, std::span<const double> served_rates);

}  // namespace remsim

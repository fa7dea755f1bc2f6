#include "remsim/scheduler.hpp"

#include <algorithm>
#include <numeric>

#include "remsim/error.hpp"

namespace remsim {

double IcicMask::total_mw() const {
  return std::accumulate(per_rb_power_mw.begin(), per_rb_power_mw.end(), 0.0);
}

std::vector<int> icic_partition_bounds(int n_rb) {
  const int part = n_rb / 3;
  return {0, part, 2 * part, n_rb};
}

IcicMask icic_power_mask(int cell_index, double total_power_mw, int n_rb) {
  if (n_rb < 3) throw ConfigError("soft frequency reuse needs at least 3 RBs");
  if (cell_index < 0) throw ConfigError("cell index must be non-negative");
  IcicMask mask;
  mask.partition = cell_index % 3;
  const auto bounds = icic_partition_bounds(n_rb);
  mask.weights.assign(static_cast<std::size_t>(n_rb), 1.0);
  for (int rb = bounds[mask.partition]; rb < bounds[mask.partition + 1]; ++rb) {
    mask.weights[rb] = 4.0;
  }
  mask.per_rb_power_mw.assign(static_cast<std::size_t>(n_rb), 0.0);
  if (!(total_power_mw > 0.0)) return mask;
  const double weight_sum = std::accumulate(mask.weights.begin(), mask.weights.end(), 0.0);
  const double unit = total_power_mw / weight_sum;
  for (int rb = 0; rb < n_rb; ++rb) mask.per_rb_power_mw[rb] = mask.weights[rb] * unit;
  return mask;
}

IcicMask uniform_power_mask(double total_power_mw, int n_rb) {
  if (n_rb < 1) throw ConfigError("power mask needs at least one RB");
  IcicMask mask;
  mask.weights.assign(static_cast<std::size_t>(n_rb), 1.0);
  const double per_rb = total_power_mw > 0.0 ? total_power_mw / n_rb : 0.0;
  mask.per_rb_power_mw.assign(static_cast<std::size_t>(n_rb), per_rb);
  return mask;
}

std::vector<int> pf_schedule(const RateMatrix& rates, const PfState& state, double epsilon) {
  std::vector<int> owner(static_cast<std::size_t>(rates.n_rb), kUnassigned);
  if (rates.n_ue == 0) return owner;
  if (state.average_rate.size() != static_cast<std::size_t>(rates.n_ue)) {
    throw ConfigError("PF state size does not match the candidate UEs");
  }
  for (int rb = 0; rb < rates.n_rb; ++rb) {
    double best = 0.0;
    for (int u = 0; u < rates.n_ue; ++u) {
      const double r = rates.at(u, rb);
      if (!(r > 0.0)) continue;
      const double metric = r / std::max(state.average_rate[u], epsilon);
      if (metric > best) {
        best = metric;
        owner[rb] = u;
      }
    }
  }
  return owner;
}

PfState update_average_rate(PfState state, std::span<const double> served_rates) {
  if (served_rates.size() != state.average_rate.size()) {
    throw ConfigError("served rate vector does not match PF state");
  }
  const double s = state.smoothing;
  for (std::size_t u = 0; u < served_rates.size(); ++u) {
    state.average_rate[u] = (1.0 - s) * state.average_rate[u] + s * served_rates[u];
  }
  return state;
}

}  // namespace remsim

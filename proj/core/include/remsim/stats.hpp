#pragma once

#include <span>
#include <vector>

namespace remsim {

/// Nearest-rank percentile: the ceil(p/100 * N)-th smallest value (rank at
/// least 1). p in [0, 100]; throws ConfigError on an empty sample.
double percentile_nearest_rank(std::span<const double> values, double p);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  // 1.96 s / sqrt(n); 0 when n < 2
  std::size_t n = 0;
};

MeanCi mean_ci95(std::span<const double> values);

/// Sorted values paired with i / N, one row per sample.
struct CdfPoint {
  double value = 0.0;
  double fraction = 0.0;
};
std::vector<CdfPoint> empirical_cdf(std::span<const double> values);

}  // namespace remsim

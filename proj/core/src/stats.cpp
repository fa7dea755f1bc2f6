#include "remsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "remsim/error.hpp"

namespace remsim {

double percentile_nearest_rank(std::span<const double> values, double p) {
  if (values.empty()) throw ConfigError("percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) throw ConfigError("percentile must be in [0, 100]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  // tiny slack so that e.g. 10% of 100 is rank 10, not 11 from round-off
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(v.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  return v[rank - 1];
}

MeanCi mean_ci95(std::span<const double> values) {
  MeanCi out;
  out.n = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double x : values) sum += x;
  out.mean = sum / static_cast<double>(out.n);
  if (out.n < 2) return out;
  double ss = 0.0;
  for (double x : values) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / static_cast<double>(out.n - 1));
  out.half_width = 1.96 * sd / std::sqrt(static_cast<double>(out.n));
  return out;
}

std::vector<CdfPoint> empirical_cdf(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<CdfPoint> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = {v[i], static_cast<double>(i + 1) / static_cast<double>(v.size())};
  }
  return out;
}

}  // namespace remsim

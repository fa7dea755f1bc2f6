#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "remsim/error.hpp"
#include "remsim/stats.hpp"

using namespace remsim;

TEST(Percentile, NearestRank) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::reverse(v.begin(), v.end());
  EXPECT_EQ(percentile_nearest_rank(v, 10), 10.0);
  EXPECT_EQ(percentile_nearest_rank(v, 0), 1.0);
  EXPECT_EQ(percentile_nearest_rank(v, 100), 100.0);
  EXPECT_EQ(percentile_nearest_rank(v, 10.5), 11.0);
  const std::vector<double> one{3.5};
  EXPECT_EQ(percentile_nearest_rank(one, 10), 3.5);
  EXPECT_THROW(percentile_nearest_rank(std::vector<double>{}, 10), ConfigError);
  EXPECT_THROW(percentile_nearest_rank(v, 101), ConfigError);
}

TEST(MeanCi, Values) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const auto m = mean_ci95(v);
  EXPECT_DOUBLE_EQ(m.mean, 3.0);
  EXPECT_NEAR(m.half_width, 1.96 * std::sqrt(2.5) / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(m.n, 5u);
  const auto single = mean_ci95(std::vector<double>{7});
  EXPECT_EQ(single.half_width, 0.0);
  EXPECT_EQ(single.mean, 7.0);
  EXPECT_EQ(mean_ci95(std::vector<double>{}).n, 0u);
}

TEST(Cdf, SortedWithFractions) {
  const std::vector<double> v{3, 1, 2, 2};
  const auto c = empirical_cdf(v);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0].value, 1.0);
  EXPECT_DOUBLE_EQ(c[0].fraction, 0.25);
  EXPECT_EQ(c[3].value, 3.0);
  EXPECT_DOUBLE_EQ(c[3].fraction, 1.0);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LE(c[i - 1].value, c[i].value);
}

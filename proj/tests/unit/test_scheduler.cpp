#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "remsim/scheduler.hpp"

using namespace remsim;

TEST(Icic, ThreeRbExample) {
  const auto m = icic_power_mask(0, 6.0, 3);
  ASSERT_EQ(m.per_rb_power_mw.size(), 3u);
  EXPECT_DOUBLE_EQ(m.per_rb_power_mw[0], 4.0);
  EXPECT_DOUBLE_EQ(m.per_rb_power_mw[1], 1.0);
  EXPECT_DOUBLE_EQ(m.per_rb_power_mw[2], 1.0);
  EXPECT_EQ(m.partition, 0);
  EXPECT_EQ(m.weights, (std::vector<double>{4, 1, 1}));
}

TEST(Icic, PartitionsDisjoint) {
  std::set<int> boosted[3];
  for (int cell = 0; cell < 3; ++cell) {
    const auto m = icic_power_mask(cell, 10.0, 108);
    EXPECT_EQ(m.partition, cell % 3);
    for (int rb = 0; rb < 108; ++rb)
      if (m.weights[rb] == 4.0) boosted[cell].insert(rb);
  }
  for (int a = 0; a < 3; ++a) {
    EXPECT_FALSE(boosted[a].empty());
    for (int b = a + 1; b < 3; ++b)
      for (int rb : boosted[a]) EXPECT_EQ(boosted[b].count(rb), 0u);
  }
  EXPECT_EQ(icic_power_mask(4, 1.0, 108).partition, 1);
}

TEST(Icic, BoundsAndRemainder) {
  EXPECT_EQ(icic_partition_bounds(108), (std::vector<int>{0, 36, 72, 108}));
  EXPECT_EQ(icic_partition_bounds(10), (std::vector<int>{0, 3, 6, 10}));
}

TEST(Icic, TotalPowerExact) {
  const double p = 125.89254117941673;
  for (int n = 3; n <= 120; ++n) {
    for (int cell = 0; cell < 3; ++cell) {
      const auto m = icic_power_mask(cell, p, n);
      double sum = 0;
      for (double x : m.per_rb_power_mw) sum += x;
      EXPECT_NEAR(sum, p, 1e-9 * p) << n;
      EXPECT_NEAR(m.total_mw(), p, 1e-9 * p);
    }
    const auto u = uniform_power_mask(p, n);
    double sum = 0;
    for (double x : u.per_rb_power_mw) sum += x;
    EXPECT_NEAR(sum, p, 1e-9 * p);
  }
}

TEST(Icic, NonPositiveBudgetIsZero) {
  for (double p : {0.0, -1.0}) {
    const auto m = icic_power_mask(1, p, 12);
    for (double x : m.per_rb_power_mw) EXPECT_EQ(x, 0.0);
  }
}

TEST(Pf, SingleUeGetsUsableRbs) {
  RateMatrix r(1, 5);
  r.at(0, 0) = 10;
  r.at(0, 1) = 0;  // CQI 0
  r.at(0, 2) = 5;
  r.at(0, 3) = 7;
  r.at(0, 4) = 1;
  const auto alloc = pf_schedule(r, PfState(1));
  EXPECT_EQ(alloc, (std::vector<int>{0, kUnassigned, 0, 0, 0}));
}

TEST(Pf, NoCandidates) {
  const RateMatrix r(0, 4);
  const auto alloc = pf_schedule(r, PfState(0));
  EXPECT_EQ(alloc, (std::vector<int>(4, kUnassigned)));
}

TEST(Pf, TieThenAlternation) {
  RateMatrix r(2, 6);
  for (int u = 0; u < 2; ++u)
    for (int rb = 0; rb < 6; ++rb) r.at(u, rb) = 100.0;
  PfState st(2);
  auto alloc = pf_schedule(r, st);
  for (int a : alloc) EXPECT_EQ(a, 0);
  st = update_average_rate(st, std::vector<double>{600.0, 0.0});
  alloc = pf_schedule(r, st);
  for (int a : alloc) EXPECT_EQ(a, 1);
}

TEST(Pf, EachRbAtMostOnce) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1000);
  PfState st(5);
  for (int t = 0; t < 100; ++t) {
    RateMatrix r(5, 20);
    for (auto& x : r.data) x = u(rng) < 100 ? 0.0 : u(rng);
    const auto alloc = pf_schedule(r, st);
    ASSERT_EQ(alloc.size(), 20u);
    std::vector<double> served(5, 0.0);
    for (int rb = 0; rb < 20; ++rb) {
      if (alloc[rb] == kUnassigned) continue;
      ASSERT_GE(alloc[rb], 0);
      ASSERT_LT(alloc[rb], 5);
      EXPECT_GT(r.at(alloc[rb], rb), 0.0);
      served[alloc[rb]] += r.at(alloc[rb], rb);
    }
    st = update_average_rate(st, served);
  }
}

TEST(Pf, LongRunFairnessOnSymmetricChannels) {
  RateMatrix r(2, 50);
  for (int u = 0; u < 2; ++u)
    for (int rb = 0; rb < 50; ++rb) r.at(u, rb) = 1000.0 + 10.0 * rb;
  PfState st(2);
  std::vector<double> total(2, 0.0);
  for (int t = 0; t < 1000; ++t) {
    const auto alloc = pf_schedule(r, st);
    std::vector<double> served(2, 0.0);
    for (int rb = 0; rb < 50; ++rb)
      if (alloc[rb] != kUnassigned) served[alloc[rb]] += r.at(alloc[rb], rb);
    total[0] += served[0];
    total[1] += served[1];
    st = update_average_rate(st, served);
  }
  EXPECT_NEAR(total[0] / total[1], 1.0, 0.05);
}

TEST(Ema, Examples) {
  PfState st(1);
  st = update_average_rate(st, std::vector<double>{10.0});
  EXPECT_DOUBLE_EQ(st.average_rate[0], 5.0);
  for (int k = 0; k < 60; ++k) st = update_average_rate(st, std::vector<double>{0.0});
  EXPECT_LT(st.average_rate[0], 1e-15);
  EXPECT_GE(st.average_rate[0], 0.0);

  PfState c(1);
  const double r = 64.0;
  for (int k = 1; k <= 20; ++k) {
    c = update_average_rate(c, std::vector<double>{r});
    EXPECT_NEAR(r - c.average_rate[0], r / std::pow(2.0, k), 1e-12);
  }
}

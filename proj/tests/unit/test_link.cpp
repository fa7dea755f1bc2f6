#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "remsim/error.hpp"
#include "remsim/link.hpp"

using namespace remsim;

TEST(Noise, ThermalExamples) {
  EXPECT_NEAR(thermal_noise_power_dbm({20e6, 0.0}), -100.99, 0.005);
  EXPECT_DOUBLE_EQ(thermal_noise_power_dbm({1.0, 0.0}), -174.0);
  EXPECT_NEAR(thermal_noise_power_dbm({20e6, 9.0}), -91.99, 0.005);
  EXPECT_NEAR(thermal_noise_power_dbm({20e6, 9.0}) - thermal_noise_power_dbm({20e6, 0.0}), 9.0, 1e-12);
}

TEST(Noise, Conversions) {
  EXPECT_NEAR(dbm_to_mw(21.0), 125.89254117941673, 1e-12);
  EXPECT_NEAR(mw_to_dbm(1.0), 0.0, 1e-15);
  EXPECT_NEAR(linear_to_db(db_to_linear(4.87)), 4.87, 1e-12);
}

TEST(Eesm, Identity) {
  for (double g : {0.01, 1.0, 37.5, 1000.0}) {
    const std::vector<double> v(12, g);
    for (double beta : {0.5, 1.49, 17.52}) EXPECT_NEAR(eesm_effective_sinr(v, beta), g, 1e-12 * std::max(1.0, g));
    const std::vector<double> one{g};
    EXPECT_NEAR(eesm_effective_sinr(one, 3.0), g, 1e-12 * std::max(1.0, g));
  }
}

TEST(Eesm, HandEvaluatedPair) {
  const std::vector<double> v{1.0, 10.0};
  const double oracle = -std::log((std::exp(-1.0) + std::exp(-10.0)) / 2.0);
  EXPECT_NEAR(eesm_effective_sinr(v, 1.0), oracle, 1e-12);
  EXPECT_NEAR(oracle, 1.6930, 5e-5);
}

TEST(Eesm, Monotone) {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.0, 50.0), bump(0.0, 5.0);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> a(6);
    for (auto& x : a) x = u(rng);
    auto b = a;
    b[t % 6] += bump(rng);
    EXPECT_LE(eesm_effective_sinr(a, 2.0), eesm_effective_sinr(b, 2.0) + 1e-12);
  }
}

TEST(Cqi, TableAndCsvAgree) {
  const auto std_t = CqiTable::standard();
  const auto csv_t = CqiTable::load_csv(std::filesystem::path(REMSIM_DATA_DIR) / "cqi_table_v1.csv");
  ASSERT_EQ(std_t.max_cqi(), 15);
  ASSERT_EQ(csv_t.max_cqi(), 15);
  for (int k = 1; k <= 15; ++k) {
    EXPECT_EQ(std_t.entry(k).min_sinr_db, csv_t.entry(k).min_sinr_db);
    EXPECT_EQ(std_t.entry(k).efficiency, csv_t.entry(k).efficiency);
    EXPECT_EQ(std_t.entry(k).eesm_beta, csv_t.entry(k).eesm_beta);
    if (k > 1) {
      EXPECT_GT(std_t.entry(k).min_sinr_db, std_t.entry(k - 1).min_sinr_db);
      EXPECT_GT(std_t.entry(k).efficiency, std_t.entry(k - 1).efficiency);
    }
  }
  EXPECT_EQ(std_t.efficiency(15), 5.554);
  EXPECT_EQ(std_t.efficiency(0), 0.0);
}

TEST(Cqi, RejectsBrokenTables) {
  EXPECT_THROW(CqiTable({{1, 0.0, 1.0, 1.0}, {2, -1.0, 2.0, 1.0}}), ConfigError);
  EXPECT_THROW(CqiTable({{1, 0.0, 1.0, 1.0}, {2, 1.0, 0.5, 1.0}}), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "remsim_bad_cqi.csv";
  {
    std::ofstream f(path);
    f << "cqi,min_sinr_db,efficiency,eesm_beta\n1,abc,0.1,1\n";
  }
  EXPECT_THROW(CqiTable::load_csv(path), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(CqiTable::load_csv("/nonexistent/cqi.csv"), ConfigError);
}

TEST(Cqi, SinrToCqiBoundaries) {
  const auto t = CqiTable::standard();
  EXPECT_EQ(sinr_to_cqi(-10.0, t), 0);
  EXPECT_EQ(sinr_to_cqi(-6.71, t), 0);
  for (int k = 1; k <= 15; ++k) {
    EXPECT_EQ(sinr_to_cqi(t.entry(k).min_sinr_db, t), k) << k;
    EXPECT_EQ(sinr_to_cqi(t.entry(k).min_sinr_db - 1e-9, t), k - 1) << k;
  }
  EXPECT_EQ(sinr_to_cqi(40.0, t), 15);
  // the linear shortcut agrees away from the thresholds
  for (double db = -9.95; db < 30.0; db += 0.1) EXPECT_EQ(t.cqi_for_linear(db_to_linear(db)), sinr_to_cqi(db, t)) << db;
}

TEST(Cqi, SelectCqiFlatAndFaded) {
  const auto t = CqiTable::standard();
  const std::vector<double> flat(12, db_to_linear(12.0));
  EXPECT_EQ(select_cqi(flat, t), sinr_to_cqi(12.0, t));
  std::vector<double> faded = flat;
  faded[0] = db_to_linear(-5.0);
  EXPECT_LE(select_cqi(faded, t), select_cqi(flat, t));
}

TEST(Rate, Examples) {
  RateMapper m;
  SinrVector s(3);
  for (int rb = 0; rb < 3; ++rb) {
    s.signal[rb] = 1000.0;
    s.noise[rb] = 1.0;
  }
  EXPECT_EQ(rate_of_allocation(Technology::lte, {}, s, m), 0.0);
  const std::vector<int> one{1};
  const double lte = rate_of_allocation(Technology::lte, one, s, m);
  EXPECT_NEAR(lte, 999720.0, 1e-6);
  EXPECT_DOUBLE_EQ(rate_of_allocation(Technology::nr, one, s, m), 1.05 * lte);
  const std::vector<int> bad{3};
  EXPECT_THROW(rate_of_allocation(Technology::lte, bad, s, m), ConfigError);
}

TEST(Rate, AdditiveAndMonotone) {
  RateMapper m;
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 200.0);
  for (int t = 0; t < 200; ++t) {
    SinrVector s(10);
    for (int rb = 0; rb < 10; ++rb) {
      s.signal[rb] = u(rng);
      s.noise[rb] = 1.0;
      s.i_out[rb] = 0.5 * u(rng);
    }
    const std::vector<int> a{0, 2, 4}, b{1, 3, 9}, ab{0, 2, 4, 1, 3, 9};
    EXPECT_NEAR(rate_of_allocation(Technology::nr, ab, s, m),
                rate_of_allocation(Technology::nr, a, s, m) + rate_of_allocation(Technology::nr, b, s, m), 1e-6);
    SinrVector better = s;
    for (auto& x : better.signal) x *= 1.3;
    EXPECT_GE(rate_of_allocation(Technology::lte, ab, better, m), rate_of_allocation(Technology::lte, ab, s, m));
  }
}

TEST(Rate, StepFunctionOfExternalMultiplier) {
  // non-increasing in beta, piecewise constant
  RateMapper m;
  SinrVector s(20);
  for (int rb = 0; rb < 20; ++rb) {
    s.signal[rb] = 50.0 + 10.0 * rb;
    s.noise[rb] = 1.0;
    s.i_in[rb] = 0.5;
    s.i_out[rb] = 0.2 + 0.05 * rb;
  }
  double prev = std::numeric_limits<double>::infinity();
  int distinct = 0;
  for (double db = -40; db <= 40; db += 0.05) {
    std::vector<double> lin(20);
    for (int rb = 0; rb < 20; ++rb) lin[rb] = s.sinr_scaled(rb, db_to_linear(db));
    const double r = m.rate(lin, Technology::lte);
    EXPECT_LE(r, prev);
    if (r != prev) ++distinct;
    prev = r;
  }
  EXPECT_GT(distinct, 5);
  EXPECT_LT(distinct, 400);
}

TEST(Rate, ShannonMode) {
  RateMapper m;
  m.mode = RateMode::shannon;
  EXPECT_NEAR(m.rb_rate(1.0), 180e3, 1e-9);
  EXPECT_NEAR(m.rb_rate(3.0), 360e3, 1e-9);
}

TEST(SinrVector, Definition) {
  SinrVector s(1);
  s.signal[0] = 10;
  s.noise[0] = 1;
  s.i_in[0] = 2;
  s.i_out[0] = 3;
  EXPECT_DOUBLE_EQ(s.sinr(0), 10.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.sinr_scaled(0, 2.0), 10.0 / 9.0);
  EXPECT_DOUBLE_EQ(s.linear()[0], s.sinr(0));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "remsim/error.hpp"
#include "remsim/rem.hpp"

using namespace remsim;

namespace {

BetaReport rep(int ue, double beta, int ts, Point2 p = {1, 2}) { return {ue, p, beta, ts}; }

}  // namespace

TEST(RemStore, OneMsDelay) {
  RemStore s(1, 10);
  s.submit_report(rep(7, 1.5, 5), 5);
  EXPECT_TRUE(s.snapshot(5).empty());
  const auto snap = s.snapshot(6);
  ASSERT_EQ(snap.size(), 1u);
  EXPECT_EQ(snap[0].ue_id, 7);
  EXPECT_EQ(snap[0].beta_db, 1.5);
}

TEST(RemStore, LongDelay) {
  RemStore s(1000, 10);
  s.submit_report(rep(1, 0, 5), 5);
  EXPECT_TRUE(s.snapshot(1004).empty());
  EXPECT_EQ(s.snapshot(1005).size(), 1u);
  EXPECT_FALSE(s.due_for_update(1004));
  EXPECT_TRUE(s.due_for_update(1005));
}

TEST(RemStore, LastWriteWinsPerUe) {
  RemStore s(1, 10);
  s.submit_report(rep(2, 1.0, 0), 0);
  s.submit_report(rep(1, 5.0, 0), 0);
  s.submit_report(rep(2, 3.0, 1), 1);
  auto snap = s.snapshot(1);
  ASSERT_EQ(snap.size(), 2u);
  EXPECT_EQ(snap[0].ue_id, 1);
  EXPECT_EQ(snap[1].beta_db, 1.0);  // the newer one is not visible yet
  snap = s.snapshot(2);
  EXPECT_EQ(snap[1].beta_db, 3.0);
  EXPECT_EQ(s.report_count(), 3u);
  EXPECT_THROW(s.submit_report(rep(1, 0, 9), 8), ConfigError);
}

TEST(RemStore, SnapshotMonotone) {
  RemStore s(3, 10);
  Rng rng(1);
  std::uniform_int_distribution<int> ue(0, 9);
  for (int t = 0; t < 200; ++t)
    for (int k = 0; k < 3; ++k) s.submit_report(rep(ue(rng), t * 0.1, t), t);
  for (int t = 0; t < 210; ++t) {
    const auto a = s.snapshot(t), b = s.snapshot(t + 1);
    EXPECT_GE(b.size(), a.size());
    for (const auto& r : a) {
      const auto it = std::find_if(b.begin(), b.end(), [&](const BetaReport& x) { return x.ue_id == r.ue_id; });
      ASSERT_NE(it, b.end());
      EXPECT_GE(it->timestamp_ms, r.timestamp_ms);
    }
    for (const auto& r : a) EXPECT_LE(r.timestamp_ms, t - 3);
  }
}

TEST(RemStore, DueForUpdate) {
  RemStore s(0, 10);
  for (int t = 0; t < 30; ++t) EXPECT_FALSE(s.due_for_update(t));
  s.submit_report(rep(1, 0, 0), 0);
  for (int t = 0; t < 40; ++t) EXPECT_EQ(s.due_for_update(t), t % 10 == 0) << t;

  RemStore d(1, 10);
  d.submit_report(rep(1, 0, 1), 1);  // visible at 2
  EXPECT_FALSE(d.due_for_update(1));
  EXPECT_TRUE(d.due_for_update(2));
  EXPECT_TRUE(d.due_for_update(12));
  EXPECT_FALSE(d.due_for_update(10));

  RemStore once(1, 1000);
  once.submit_report(rep(1, 0, 1), 1);
  int updates = 0;
  for (int t = 0; t < 1000; ++t) updates += once.due_for_update(t);
  EXPECT_EQ(updates, 1);
  EXPECT_THROW(RemStore(0, 0), ConfigError);
  EXPECT_THROW(RemStore(-1, 10), ConfigError);
}

TEST(RemStore, RateLogAndCsv) {
  RemStore s(1, 10);
  s.log_rate(3, {1, 1}, 10.0);
  s.log_rate(3, {1, 1}, 20.0);
  s.log_rate(1, {2, 2}, 5.0);
  const auto log = s.rate_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].ue_id, 1);
  EXPECT_DOUBLE_EQ(log[1].mean_rate_bps, 15.0);
  EXPECT_EQ(log[1].samples, 2);

  s.submit_report(rep(4, -3, 2, {5, 6}), 2);
  std::ostringstream out;
  s.write_report_csv(out);
  EXPECT_EQ(out.str(), "time_ms,visible_ms,ue,x,y,beta_db\n2,3,4,5,6,-3\n");
}

TEST(Quantizer, Examples) {
  Quantizer none;
  EXPECT_EQ(quantize_beta(none, 4.87), 4.87);
  Quantizer two{QuantizerMode::two_bit};
  EXPECT_EQ(quantize_beta(two, 4.87), 6.0);
  EXPECT_EQ(quantize_beta(two, 0.0), -3.0);
  EXPECT_EQ(quantize_beta(two, 4.5), 3.0);   // tie between 3 and 6
  EXPECT_EQ(quantize_beta(two, -4.5), -3.0);
  EXPECT_EQ(quantize_beta(two, 0.1), 3.0);
  EXPECT_EQ(quantize_beta(two, -100.0), -6.0);
  EXPECT_EQ(quantize_beta(two, 60.0), 6.0);
  for (double b = -10; b <= 10; b += 0.01) {
    const double q = quantize_beta(two, b);
    for (double l : two.levels_db) EXPECT_LE(std::abs(b - q), std::abs(b - l) + 1e-12);
  }
}

TEST(Perturb, ZeroIsIdentity) {
  Rng rng(1);
  const auto r = perturb_location(rep(1, 2, 3, {10, 20}), 0.0, rng);
  EXPECT_EQ(r.position, (Point2{10, 20}));
  EXPECT_EQ(r.beta_db, 2.0);
  EXPECT_THROW(perturb_location(rep(1, 2, 3), -1.0, rng), ConfigError);
}

TEST(Perturb, UniformDiskMoments) {
  Rng rng(5);
  const double radius = 50.0;
  double sum = 0, max_d = 0;
  double sx = 0, sy = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto r = perturb_location(rep(1, 0, 0, {0, 0}), radius, rng);
    const double d = std::hypot(r.position.x, r.position.y);
    sum += d;
    sx += r.position.x;
    sy += r.position.y;
    max_d = std::max(max_d, d);
  }
  EXPECT_LE(max_d, radius);
  EXPECT_NEAR(sum / n, 2.0 / 3.0 * radius, 0.02 * 2.0 / 3.0 * radius);
  EXPECT_NEAR(sx / n, 0.0, 0.5);
  EXPECT_NEAR(sy / n, 0.0, 0.5);
}

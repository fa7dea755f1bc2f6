#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "remsim/error.hpp"
#include "remsim/geometry.hpp"
#include "remsim/scenario.hpp"

using namespace remsim;

namespace {

Scenario square_world() {
  Scenario s = Scenario::reference();
  s.building = Polygon({{40, 40}, {50, 40}, {50, 50}, {40, 50}});
  s.indoor_bs = {{3, {45, 45, 3}, 21.0, 0.0, Network::indoor}};
  return s;
}

// nearest-edge distance, written out independently of Polygon
double brute_distance(const std::vector<Point2>& v, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy)));
  }
  return best;
}

}  // namespace

TEST(Geometry, PolygonBasics) {
  const Polygon sq({{0, 0}, {0, 10}, {10, 10}, {10, 0}});  // clockwise on input
  EXPECT_DOUBLE_EQ(sq.area(), 100.0);
  EXPECT_DOUBLE_EQ(sq.perimeter(), 40.0);
  EXPECT_TRUE(sq.contains({5, 5}));
  EXPECT_TRUE(sq.contains({0, 5}));  // edge counts
  EXPECT_FALSE(sq.contains_strictly({0, 5}));
  EXPECT_FALSE(sq.contains({10.01, 5}));
  EXPECT_NEAR(sq.distance_to_boundary({5, 5}), 5.0, 1e-12);
  EXPECT_TRUE(sq.is_simple());
  const Polygon bow({{0, 0}, {10, 10}, {10, 0}, {0, 10}});
  EXPECT_FALSE(bow.is_simple());
}

TEST(Geometry, SegmentsAndOverlap) {
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_NEAR(point_segment_distance({0, 1}, {-1, 0}, {1, 0}), 1.0, 1e-12);
  EXPECT_NEAR(point_segment_distance({3, 0}, {-1, 0}, {1, 0}), 2.0, 1e-12);
  const Polygon sq({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
  EXPECT_TRUE(sq.overlaps({5, 5, 20, 20}));
  EXPECT_FALSE(sq.overlaps({10, 0, 20, 10}));  // touching only
}

TEST(Scenario, ReferenceIsValid) {
  const Scenario s = Scenario::reference();
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.all_bs().size(), 7u);
  EXPECT_EQ(s.bs_by_id(3).network, Network::indoor);
  for (const auto& b : s.indoor_bs) EXPECT_LT(b.position.z, s.outdoor_bs[0].position.z);
  EXPECT_THROW(s.bs_by_id(99), ConfigError);
}

TEST(Scenario, ValidateRejectsBrokenWorlds) {
  Scenario s = Scenario::reference();
  s.indoor_bs[0].position = {5, 5, 3};
  EXPECT_THROW(s.validate(), ConfigError);
  s = Scenario::reference();
  s.outdoor_bs[0].position = {30, 60, 10};
  EXPECT_THROW(s.validate(), ConfigError);
  s = Scenario::reference();
  s.outdoor_region = {0, 0, 100, 60};
  EXPECT_THROW(s.validate(), ConfigError);
  s = Scenario::reference();
  s.building = Polygon({{20, 50}, {80, 80}, {80, 50}, {20, 80}});
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Belt, SquareBuildingCoarseSpacing) {
  const auto belt = generate_protection_belt(square_world(), 10.0, 0.5);
  EXPECT_EQ(belt.kind, ProtectionKind::full_belt);
  EXPECT_GE(belt.points.size(), 4u);
  const Polygon& b = square_world().building;
  for (const auto& p : belt.points) {
    EXPECT_FALSE(b.contains(p));
    EXPECT_LE(b.distance_to_boundary(p), 0.6);
  }
}

TEST(Belt, SpacingLongerThanPerimeterStillCoversEveryEdge) {
  const Scenario s = square_world();
  const auto belt = generate_protection_belt(s, 1000.0, 0.5);
  const auto& v = s.building.vertices();
  for (std::size_t e = 0; e < v.size(); ++e) {
    const bool hit = std::any_of(belt.points.begin(), belt.points.end(), [&](Point2 p) {
      return point_segment_distance(p, v[e], v[(e + 1) % v.size()]) <= 0.5 + 1e-9;
    });
    EXPECT_TRUE(hit) << "edge " << e;
  }
}

TEST(Belt, LShapeEveryPointAtOffset) {
  const Scenario s = Scenario::reference();
  for (double offset : {0.5, 2.0}) {
    const auto belt = generate_protection_belt(s, 1.0, offset);
    ASSERT_FALSE(belt.points.empty());
    for (const auto& p : belt.points) {
      EXPECT_NEAR(brute_distance(s.building.vertices(), p), offset, 1e-6);
      EXPECT_FALSE(s.building.contains(p));
    }
    // consecutive samples no more than spacing apart along the path
    for (std::size_t i = 0; i < belt.points.size(); ++i) {
      const auto a = belt.points[i], b = belt.points[(i + 1) % belt.points.size()];
      EXPECT_LE(distance(a, b), 1.0 + 1e-9);
    }
  }
}

TEST(Belt, ArgumentErrors) {
  const Scenario s = Scenario::reference();
  EXPECT_THROW(generate_protection_belt(s, 0.0, 0.5), ConfigError);
  EXPECT_THROW(generate_protection_belt(s, 1.0, -1.0), ConfigError);
  Scenario bad = s;
  bad.building = Polygon({{0, 0}, {1, 1}});
  EXPECT_THROW(generate_protection_belt(bad, 1.0, 0.5), ConfigError);
}

TEST(Belt, RestrictToArea) {
  const Scenario s = Scenario::reference();
  const auto belt = generate_protection_belt(s, 1.0, 0.5);
  const auto all = restrict_to_protection_area(belt, {-10, -10, 200, 200});
  EXPECT_EQ(all.kind, ProtectionKind::restricted_area);
  EXPECT_EQ(all.points, belt.points);

  const auto lower = restrict_to_protection_area(belt, {0, 0, 100, 50});
  std::vector<Point2> expected;
  for (const auto& p : belt.points)
    if (p.y <= 50.0) expected.push_back(p);
  EXPECT_EQ(lower.points, expected);
  EXPECT_LT(lower.points.size(), belt.points.size());

  EXPECT_THROW(restrict_to_protection_area(belt, {0, 0, 5, 5}), ConfigError);
}

TEST(Placement, SingleOutdoorUe) {
  const Scenario s = Scenario::reference();
  UserCounts c;
  c.indoor_uniform = 0;
  c.indoor_cluster = 0;
  c.outdoor = 1;
  Rng rng(7);
  const auto ues = place_users(s, c, rng);
  ASSERT_EQ(ues.size(), 1u);
  EXPECT_EQ(ues[0].network, Network::outdoor);
  EXPECT_TRUE(s.outdoor_region.contains(ues[0].position));
  EXPECT_EQ(ues[0].technology, Technology::lte);
}

TEST(Placement, DeterministicAndInRegion) {
  const Scenario s = Scenario::reference();
  const UserCounts c;
  Rng a(42), b(42);
  const auto x = place_users(s, c, a);
  const auto y = place_users(s, c, b);
  ASSERT_EQ(x.size(), 50u);
  const auto& cluster_bs = s.bs_by_id(c.cluster_bs_id);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].id, y[i].id);
    EXPECT_EQ(x[i].position, y[i].position);
    EXPECT_EQ(x[i].technology, y[i].technology);
    EXPECT_EQ(x[i].speed_kmh, y[i].speed_kmh);
    EXPECT_EQ(x[i].id, static_cast<int>(i) + 1);
    if (x[i].network == Network::indoor) {
      EXPECT_TRUE(s.building.contains(x[i].position));
      EXPECT_TRUE(x[i].speed_kmh == c.static_speed_kmh || x[i].speed_kmh == c.walking_speed_kmh);
    } else {
      EXPECT_TRUE(s.outdoor_region.contains(x[i].position));
    }
    if (i >= 25 && i < 35) EXPECT_LE(distance(x[i].position, cluster_bs.position.xy()), c.cluster_radius_m);
  }
}

TEST(Placement, IndoorUniformChiSquare) {
  // quadrants of the building's bounding box, weighted by the building area inside each
  const Scenario s = Scenario::reference();
  UserCounts c;
  c.indoor_uniform = 10000;
  c.indoor_cluster = 0;
  c.outdoor = 0;
  Rng rng(3);
  const auto ues = place_users(s, c, rng);
  const Rect bb = s.building.bounding_box();
  const double mx = 0.5 * (bb.x_min + bb.x_max), my = 0.5 * (bb.y_min + bb.y_max);
  auto quadrant = [&](Point2 p) { return (p.x >= mx ? 1 : 0) + (p.y >= my ? 2 : 0); };

  // expected shares from a fine lattice over the polygon
  std::array<double, 4> share{};
  double total = 0;
  for (double x = bb.x_min + 0.05; x < bb.x_max; x += 0.1)
    for (double y = bb.y_min + 0.05; y < bb.y_max; y += 0.1)
      if (s.building.contains({x, y})) {
        share[quadrant({x, y})] += 1;
        total += 1;
      }
  std::array<double, 4> count{};
  for (const auto& u : ues) count[quadrant(u.position)] += 1;
  double chi2 = 0;
  int dof = -1;
  for (int q = 0; q < 4; ++q) {
    const double e = share[q] / total * ues.size();
    if (e <= 0) {
      EXPECT_EQ(count[q], 0);
      continue;
    }
    ++dof;
    chi2 += (count[q] - e) * (count[q] - e) / e;
    EXPECT_NEAR(count[q] / e, 1.0, 0.05);
  }
  // 99.9% quantile for 3 dof is 16.27
  EXPECT_LT(chi2, 16.27) << "dof " << dof;
}

TEST(Placement, TechnologyMix) {
  const Scenario s = Scenario::reference();
  UserCounts c;
  c.indoor_uniform = 4000;
  c.indoor_cluster = 0;
  c.outdoor = 0;
  Rng rng(11);
  const auto ues = place_users(s, c, rng);
  const double nr = std::count_if(ues.begin(), ues.end(), [](const UeConfig& u) { return u.technology == Technology::nr; });
  EXPECT_NEAR(nr / ues.size(), 0.5, 0.03);
}

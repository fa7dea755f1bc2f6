#include "remsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "remsim/error.hpp"

namespace remsim {

std::string to_string(Network n) { return n == Network::outdoor ? "outdoor" : "indoor"; }

std::string to_string(Technology t) { return t == Technology::lte ? "4G" : "5G"; }

std::string to_string(ProtectionKind k) {
  switch (k) {
    case ProtectionKind::full_belt: return "full_belt";
    case ProtectionKind::restricted_area: return "restricted_area";
    case ProtectionKind::pal_area: return "pal_area";
  }
  return "unknown";
}

void Scenario::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("scenario: " + msg); };
  if (!(area_width_m > 0.0) || !(area_height_m > 0.0)) fail("area must have positive size");
  if (building.size() < 3) fail("building polygon needs at least 3 vertices");
  if (!building.is_simple()) fail("building polygon is not simple");
  const Rect box = building.bounding_box();
  const Rect whole = area();
  if (box.x_min < whole.x_min || box.y_min < whole.y_min || box.x_max > whole.x_max ||
      box.y_max > whole.y_max) {
    fail("building polygon extends outside the area");
  }
  if (!outdoor_region.valid()) fail("outdoor_region is empty");
  if (building.overlaps(outdoor_region)) fail("outdoor_region intersects the building interior");
  if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(rb_bandwidth_hz > 0.0)) {
    fail("carrier, bandwidth and RB bandwidth must be positive");
  }
  if (n_rb < 1) fail("n_rb must be at least 1");
  if (ue_noise_figure_db < 0.0) fail("noise figure must be non-negative");
  std::vector<int> ids;
  for (const auto& bs : outdoor_bs) {
    if (bs.network != Network::outdoor) fail("outdoor_bs entry tagged indoor");
    if (building.contains(bs.position.xy())) {
      fail("outdoor BS " + std::to_string(bs.id) + " lies inside the building");
    }
    if (!std::isfinite(bs.max_power_dbm)) fail("non-finite BS power");
    ids.push_back(bs.id);
  }
  for (const auto& bs : indoor_bs) {
    if (bs.network != Network::indoor) fail("indoor_bs entry tagged outdoor");
    if (!building.contains_strictly(bs.position.xy())) {
      fail("indoor BS " + std::to_string(bs.id) + " lies outside the building");
    }
    if (!std::isfinite(bs.max_power_dbm)) fail("non-finite BS power");
    ids.push_back(bs.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) fail("duplicate BS id");
  if (outdoor_bs.empty()) fail("at least one outdoor BS is required");
}

std::vector<BsConfig> Scenario::all_bs() const {
  std::vector<BsConfig> all = outdoor_bs;
  all.insert(all.end(), indoor_bs.begin(), indoor_bs.end());
  return all;
}

const BsConfig& Scenario::bs_by_id(int id) const {
  for (const auto& bs : outdoor_bs) {
    if (bs.id == id) return bs;
  }
  for (const auto& bs : indoor_bs) {
    if (bs.id == id) return bs;
  }
  throw ConfigError("scenario: no BS with id " + std::to_string(id));
}

Scenario Scenario::reference() {
  Scenario s;
  s.area_width_m = 100.0;
  s.area_height_m = 130.0;
  s.building = Polygon({{20.0, 50.0}, {80.0, 50.0}, {80.0, 80.0},
                        {50.0, 80.0}, {50.0, 115.0}, {20.0, 115.0}});
  s.outdoor_bs = {
      {1, {8.0, 30.0, 10.0}, 21.0, 0.0, Network::outdoor},
      {2, {92.0, 30.0, 10.0}, 21.0, 0.0, Network::outdoor},
  };
  s.indoor_bs = {
      {3, {28.0, 58.0, 3.0}, 21.0, 0.0, Network::indoor},
      {4, {50.0, 65.0, 3.0}, 21.0, 0.0, Network::indoor},
      {5, {72.0, 65.0, 3.0}, 21.0, 0.0, Network::indoor},
      {6, {35.0, 88.0, 3.0}, 21.0, 0.0, Network::indoor},
      {7, {35.0, 106.0, 3.0}, 21.0, 0.0, Network::indoor},
  };
  s.outdoor_region = {0.0, 0.0, 100.0, 45.0};
  return s;
}

namespace {

Point2 add(Point2 a, Point2 b, double s) { return {a.x + s * b.x, a.y + s * b.y}; }

}  // namespace

ProtectionGeometry generate_protection_belt(const Scenario& scenario, double spacing_m,
                                            double offset_m) {
  if (!(spacing_m > 0.0)) throw ConfigError("belt spacing must be positive");
  if (!(offset_m >= 0.0)) throw ConfigError("belt offset must be non-negative");
  const auto& v = scenario.building.vertices();
  const std::size_t n = v.size();
  if (n < 3) throw ConfigError("belt: degenerate building polygon (fewer than 3 vertices)");

  std::vector<Point2> dir(n);
  std::vector<Point2> normal(n);
  std::vector<double> len(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i];
    const Point2 b = v[(i + 1) % n];
    len[i] = distance(a, b);
    if (len[i] == 0.0) throw ConfigError("belt: zero-length building edge");
    dir[i] = {(b.x - a.x) / len[i], (b.y - a.y) / len[i]};
    // counter-clockwise polygon: outward normal is the right-hand side
    normal[i] = {dir[i].y, -dir[i].x};
  }

  // Along-edge start/end parameters of each offset segment after trimming
  // at reflex corners.
  std::vector<double> s_start(n, 0.0);
  std::vector<double> s_end(len);
  std::vector<bool> convex(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    const double turn = dir[prev].x * dir[i].y - dir[prev].y * dir[i].x;
    convex[i] = turn >= 0.0;
    if (!convex[i] && offset_m > 0.0) {
      // P - v satisfies (P - v).n_prev = offset and (P - v).n_i = offset
      const double a11 = normal[prev].x, a12 = normal[prev].y;
      const double a21 = normal[i].x, a22 = normal[i].y;
      const double det = a11 * a22 - a12 * a21;
      const double px = offset_m * (a22 - a12) / det;
      const double py = offset_m * (a11 - a21) / det;
      s_start[i] = px * dir[i].x + py * dir[i].y;
      s_end[prev] = len[prev] + (px * dir[prev].x + py * dir[prev].y);
    }
  }

  ProtectionGeometry belt;
  belt.kind = ProtectionKind::full_belt;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    if (convex[i]) {
      const double a0 = std::atan2(normal[prev].y, normal[prev].x);
      double a1 = std::atan2(normal[i].y, normal[i].x);
      while (a1 < a0) a1 += 2.0 * std::numbers::pi;
      const double sweep = a1 - a0;
      const double arc_len = sweep * offset_m;
      const int steps = std::max(1, static_cast<int>(std::ceil(arc_len / spacing_m)));
      const int emitted = (arc_len > 0.0) ? steps : 0;
      for (int k = 0; k < emitted; ++k) {
        const double a = a0 + sweep * k / steps;
        belt.points.push_back({v[i].x + offset_m * std::cos(a), v[i].y + offset_m * std::sin(a)});
      }
    }
    const double l = s_end[i] - s_start[i];
    const Point2 base = add(v[i], normal[i], offset_m);
    const int steps = std::max(1, static_cast<int>(std::ceil(l / spacing_m)));
    if (l <= 0.0) {
      belt.points.push_back(add(base, dir[i], s_start[i]));
      continue;
    }
    for (int k = 0; k < steps; ++k) {
      belt.points.push_back(add(base, dir[i], s_start[i] + l * k / steps));
    }
  }
  return belt;
}

ProtectionGeometry restrict_to_protection_area(const ProtectionGeometry& belt,
                                               const Rect& region) {
  if (belt.kind != ProtectionKind::full_belt) {
    throw ConfigError("restrict_to_protection_area expects a full belt");
  }
  ProtectionGeometry out;
  out.kind = ProtectionKind::restricted_area;
  std::copy_if(belt.points.begin(), belt.points.end(), std::back_inserter(out.points),
               [&](Point2 p) { return region.contains(p); });
  if (out.points.empty()) {
    throw ConfigError("protection area does not contain any belt point");
  }
  return out;
}

std::vector<UeConfig> place_users(const Scenario& scenario, const UserCounts& counts, Rng& rng) {
  if (counts.indoor_uniform < 0 || counts.indoor_cluster < 0 || counts.outdoor < 0) {
    throw ConfigError("user counts must be non-negative");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution pick_nr(counts.nr_probability);
  std::bernoulli_distribution pick_walking(counts.walking_fraction);
  const Rect box = scenario.building.bounding_box();
  constexpr int kMaxAttempts = 100000;

  std::vector<UeConfig> ues;
  ues.reserve(static_cast<std::size_t>(counts.indoor_uniform + counts.indoor_cluster +
                                       counts.outdoor));
  int next_id = 1;
  auto make_indoor = [&](Point2 p, bool is_static) {
    UeConfig ue;
    ue.id = next_id++;
    ue.position = p;
    ue.network = Network::indoor;
    ue.technology = pick_nr(rng) ? Technology::nr : Technology::lte;
    ue.speed_kmh = (is_static || !pick_walking(rng)) ? counts.static_speed_kmh
                                                     : counts.walking_speed_kmh;
    ue.antenna_gain_dbi = scenario.ue_antenna_gain_dbi;
    ue.noise_figure_db = scenario.ue_noise_figure_db;
    return ue;
  };

  for (int k = 0; k < counts.indoor_uniform; ++k) {
    Point2 p;
    int attempts = 0;
    do {
      if (++attempts > kMaxAttempts) throw ConfigError("cannot sample inside the building");
      p = {box.x_min + unit(rng) * box.width(), box.y_min + unit(rng) * box.height()};
    } while (!scenario.building.contains_strictly(p));
    ues.push_back(make_indoor(p, false));
  }

  if (counts.indoor_cluster > 0) {
    const Point2 center = scenario.bs_by_id(counts.cluster_bs_id).position.xy();
    for (int k = 0; k < counts.indoor_cluster; ++k) {
      Point2 p;
      int attempts = 0;
      do {
        if (++attempts > kMaxAttempts) throw ConfigError("cluster disk misses the building");
        const double r = counts.cluster_radius_m * std::sqrt(unit(rng));
        const double a = 2.0 * std::numbers::pi * unit(rng);
        p = {center.x + r * std::cos(a), center.y + r * std::sin(a)};
      } while (!scenario.building.contains_strictly(p));
      ues.push_back(make_indoor(p, true));
    }
  }

  const Rect& region = scenario.outdoor_region;
  for (int k = 0; k < counts.outdoor; ++k) {
    UeConfig ue;
    ue.id = next_id++;
    ue.position = {region.x_min + unit(rng) * region.width(),
                   region.y_min + unit(rng) * region.height()};
    ue.network = Network::outdoor;
    ue.technology = Technology::lte;
    ue.speed_kmh = counts.outdoor_speed_kmh;
    ue.antenna_gain_dbi = scenario.ue_antenna_gain_dbi;
    ue.noise_figure_db = scenario.ue_noise_figure_db;
    ues.push_back(ue);
  }
  return ues;
}

}  // namespace remsim

#pragma once

#include <random>
#include <string>
#include <vector>

#include "remsim/geometry.hpp"

namespace remsim {

using Rng = std::mt19937_64;

enum class Network { outdoor, indoor };
enum class Technology { lte, nr };
enum class ProtectionKind { full_belt, restricted_area, pal_area };

std::string to_string(Network n);
std::string to_string(Technology t);
std::string to_string(ProtectionKind k);

struct BsConfig {
  int id = 0;
  Point3 position;
  double max_power_dbm = 21.0;
  double antenna_gain_dbi = 0.0;
  Network network = Network::outdoor;
};

struct UeConfig {
  int id = 0;
  Point2 position;
  Technology technology = Technology::lte;
  double speed_kmh = 0.0;
  double antenna_gain_dbi = 0.0;
  double noise_figure_db = 9.0;
  Network network = Network::outdoor;
};

/// Victim locations a scheme protects. Always outside the building.
struct ProtectionGeometry {
  std::vector<Point2> points;
  ProtectionKind kind = ProtectionKind::full_belt;
};

/// Immutable description of the simulated world.
struct Scenario {
  double area_width_m = 100.0;
  double area_height_m = 130.0;
  Polygon building;
  std::vector<BsConfig> outdoor_bs;
  std::vector<BsConfig> indoor_bs;
  Rect outdoor_region;
  double carrier_hz = 3.5e9;
  double bandwidth_hz = 20e6;
  int n_rb = 108;
  double rb_bandwidth_hz = 180e3;
  double ue_height_m = 1.5;
  double ue_noise_figure_db = 9.0;
  double ue_antenna_gain_dbi = 0.0;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;

  Rect area() const { return {0.0, 0.0, area_width_m, area_height_m}; }
  /// Outdoor BSs followed by indoor BSs.
  std::vector<BsConfig> all_bs() const;
  const BsConfig& bs_by_id(int id) const;

  /// The L-shaped reference deployment: two outdoor and five indoor BSs.
  static Scenario reference();
};

/// How many UEs of each population to drop, and their mobility mix.
struct UserCounts {
  int indoor_uniform = 25;
  int indoor_cluster = 10;
  int cluster_bs_id = 3;
  double cluster_radius_m = 3.0;
  int outdoor = 15;
  double nr_probability = 0.5;
  double walking_fraction = 0.2;
  double static_speed_kmh = 0.36;
  double walking_speed_kmh = 3.0;
  double outdoor_speed_kmh = 3.0;
};

/// Outward offset of the building boundary sampled at most `spacing_m`
/// apart. Reflex corners are trimmed so every point sits exactly
/// `offset_m` from the walls; convex corners get arc samples.
ProtectionGeometry generate_protection_belt(const Scenario& scenario, double spacing_m,
                                            double offset_m);

/// Subset of the belt lying inside `region`. Throws ConfigError if empty.
ProtectionGeometry restrict_to_protection_area(const ProtectionGeometry& belt,
                                               const Rect& region);

/// Drops UEs: indoor uniform over the building, a cluster in a disk around
/// `counts.cluster_bs_id` (points falling outside the building are redrawn),
/// and outdoor UEs uniform over `scenario.outdoor_region`. Indoor UEs pick 5G
/// with probability `nr_probability`; outdoor UEs are LTE. Ids are assigned
/// sequentially: indoor uniform, cluster, outdoor.
std::vector<UeConfig> place_users(const Scenario& scenario, const UserCounts& counts, Rng& rng);

}  // namespace remsim

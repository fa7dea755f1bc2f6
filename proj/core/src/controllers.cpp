#include "remsim/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "remsim/error.hpp"

namespace remsim {

std::string to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::off: return "off";
    case SchemeKind::modified_lsa: return "modified_lsa";
    case SchemeKind::cbrs: return "cbrs";
    case SchemeKind::semi_static: return "semi_static";
    case SchemeKind::semi_static_area: return "semi_static_area";
    case SchemeKind::dynamic: return "dynamic";
  }
  return "?";
}

SchemeKind scheme_from_string(const std::string& s) {
  for (auto k : {SchemeKind::off, SchemeKind::modified_lsa, SchemeKind::cbrs, SchemeKind::semi_static,
                 SchemeKind::semi_static_area, SchemeKind::dynamic}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown scheme '" + s + "'");
}

bool uses_rem(SchemeKind s) {
  return s == SchemeKind::semi_static || s == SchemeKind::semi_static_area || s == SchemeKind::dynamic;
}

void SchemeConfig::validate() const {
  if (!(psi_percent > 0.0 && psi_percent <= 100.0)) throw ConfigError("psi_percent must be in (0, 100]");
  if (update_period_ms <= 0) throw ConfigError("update_period_ms must be positive");
  if (rem_delay_ms < 0) throw ConfigError("rem_delay_ms must be non-negative");
  if (!(belt_spacing_m > 0.0)) throw ConfigError("belt_spacing_m must be positive");
  if (!(belt_offset_m >= 0.0)) throw ConfigError("belt_offset_m must be non-negative");
  if (!(cbrs_grid_spacing_m > 0.0)) throw ConfigError("cbrs_grid_spacing_m must be positive");
  if (!(model_error_scale > 0.0)) throw ConfigError("model_error_scale must be positive");
  if (!protection_region.valid()) throw ConfigError("protection_region is not a valid rectangle");
  for (double g : {lsa_gamma_db, belt_gamma_db, area_gamma_db}) {
    if (!std::isfinite(g)) throw ConfigError("protection margins must be finite");
  }
}

std::vector<std::string> SchemeConfig::warnings() const {
  std::vector<std::string> out;
  auto check = [&](const char* name, double g) {
    if (g < -60.0 || g > 0.0) {
      out.push_back(std::string(name) + " = " + std::to_string(g) + " dB is outside the usual [-60, 0] dB range");
    }
  };
  check("lsa_gamma_db", lsa_gamma_db);
  check("belt_gamma_db", belt_gamma_db);
  check("area_gamma_db", area_gamma_db);
  return out;
}

double lsa_max_power_at_point(double gamma_db, double bandwidth_hz, double g_tx_dbi, double pl_db) {
  return -174.0 + 10.0 * std::log10(bandwidth_hz) - gamma_db - g_tx_dbi + pl_db;
}

double cept_max_rx_power_dbm(double bandwidth_hz, double i_over_n_db, double noise_figure_db,
                             double g_rx_dbi) {
  const double sigma_n = -174.0 + 10.0 * std::log10(bandwidth_hz);
  return sigma_n + noise_figure_db + i_over_n_db - g_rx_dbi;
}

double cept_max_power_at_point(double bandwidth_hz, double i_over_n_db, double noise_figure_db,
                               double g_rx_dbi, double g_tx_dbi, double pl_db) {
  return cept_max_rx_power_dbm(bandwidth_hz, i_over_n_db, noise_figure_db, g_rx_dbi) - g_tx_dbi + pl_db;
}

double cept_equivalent_gamma_db(double i_over_n_db, double noise_figure_db, double g_rx_dbi) {
  return -(noise_figure_db + i_over_n_db - g_rx_dbi);
}

double lsa_static_power(const ProtectionGeometry& belt, const BsConfig& bs, double gamma_db,
                        const PathlossModel& model, double bandwidth_hz, double victim_height_m) {
  if (belt.points.empty()) throw ConfigError("protection point set is empty");
  double p = bs.max_power_dbm;
  for (const auto& pt : belt.points) {
    const double pl = pathloss_db(model, bs.position, lift(pt, victim_height_m)).db;
    p = std::min(p, lsa_max_power_at_point(gamma_db, bandwidth_hz, bs.antenna_gain_dbi, pl));
  }
  return p;
}

double scale_per_10mhz(double dbm_per_10mhz, double bandwidth_hz) {
  return dbm_per_10mhz + 10.0 * std::log10(bandwidth_hz / 10e6);
}

ProtectionGeometry cbrs_pal_protection_area(const Scenario& sc, double spacing, const PathlossModel& model,
                                            double pal_threshold_dbm) {
  if (!(spacing > 0.0)) throw ConfigError("PAL grid spacing must be positive");
  const double threshold = scale_per_10mhz(pal_threshold_dbm, sc.bandwidth_hz);
  ProtectionGeometry area;
  area.kind = ProtectionKind::pal_area;
  const int nx = static_cast<int>(std::floor(sc.area_width_m / spacing + 1e-9));
  const int ny = static_cast<int>(std::floor(sc.area_height_m / spacing + 1e-9));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const Point2 pt{i * spacing, j * spacing};
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& bs : sc.outdoor_bs) {
        const double pl = pathloss_db(model, bs.position, lift(pt, sc.ue_height_m)).db;
        best = std::max(best, bs.max_power_dbm + bs.antenna_gain_dbi + sc.ue_antenna_gain_dbi - pl);
      }
      if (best > threshold) area.points.push_back(pt);
    }
  }
  return area;
}

PowerAllocation cbrs_gaa_power(const ProtectionGeometry& pal_area, std::span<const BsConfig> indoor_bs,
                               const PathlossModel& model, double interference_limit_dbm,
                               double bandwidth_hz, double victim_height_m, double victim_gain_dbi) {
  if (indoor_bs.empty()) return {};
  const double p_max = dbm_to_mw(indoor_bs.front().max_power_dbm);
  if (pal_area.points.empty()) {
    PowerAllocation out;
    out.p_tx = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(indoor_bs.size()), p_max);
    out.objective_value = out.p_tx.sum();
    out.status = SolverStatus::trivial;
    return out;
  }
  const auto w = build_coupling_matrix(model, pal_area.points, indoor_bs, victim_height_m, victim_gain_dbi);
  PowerProblem pr;
  pr.w = w.w;
  pr.i_max = Eigen::VectorXd::Constant(w.rows(), dbm_to_mw(scale_per_10mhz(interference_limit_dbm, bandwidth_hz)));
  pr.p_max = p_max;
  pr.goal = Goal::sum_power;
  return solve_sum_power(pr);
}

Eigen::VectorXd static_scheme_powers(const Scenario& sc, const PathlossModel& model, const SchemeConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(sc.indoor_bs.size());
  Eigen::VectorXd p(n);
  auto per_bs = [&](const ProtectionGeometry& points, double gamma) {
    for (Eigen::Index a = 0; a < n; ++a) {
      p[a] = dbm_to_mw(lsa_static_power(points, sc.indoor_bs[a], gamma, model, sc.bandwidth_hz, sc.ue_height_m));
    }
  };
  switch (cfg.scheme) {
    case SchemeKind::off:
      p.setZero();
      break;
    case SchemeKind::dynamic:
      for (Eigen::Index a = 0; a < n; ++a) p[a] = dbm_to_mw(sc.indoor_bs[a].max_power_dbm);
      break;
    case SchemeKind::modified_lsa:
      per_bs(generate_protection_belt(sc, cfg.belt_spacing_m, cfg.belt_offset_m), cfg.lsa_gamma_db);
      break;
    case SchemeKind::semi_static:
      per_bs(generate_protection_belt(sc, cfg.belt_spacing_m, cfg.belt_offset_m), cfg.belt_gamma_db);
      break;
    case SchemeKind::semi_static_area:
      per_bs(restrict_to_protection_area(generate_protection_belt(sc, cfg.belt_spacing_m, cfg.belt_offset_m),
                                         cfg.protection_region),
             cfg.area_gamma_db);
      break;
    case SchemeKind::cbrs: {
      const auto area = cbrs_pal_protection_area(sc, cfg.cbrs_grid_spacing_m, model, cfg.cbrs_pal_threshold_dbm);
      p = cbrs_gaa_power(area, sc.indoor_bs, model, cfg.cbrs_interference_limit_dbm, sc.bandwidth_hz,
                         sc.ue_height_m, sc.ue_antenna_gain_dbi)
              .p_tx;
      break;
    }
  }
  return p;
}

BetaResult solve_beta(const SinrVector& c, double psi_percent, const RateMapper& mapper) {
  if (!(psi_percent > 0.0 && psi_percent <= 100.0)) throw ConfigError("psi_percent must be in (0, 100]");
  const int n_rb = c.n_rb();
  auto rate = [&](double beta) {
    double r = 0.0;
    for (int rb = 0; rb < n_rb; ++rb) r += mapper.rb_rate(c.sinr_scaled(rb, beta));
    return r;
  };
  const bool any_out = std::any_of(c.i_out.begin(), c.i_out.end(), [](double v) { return v > 0.0; });
  if (!any_out) return {linear_to_db(kBetaCap), BetaFlag::no_external_interference};
  const double r0 = rate(0.0);
  if (!(r0 > 0.0)) return {linear_to_db(kBetaCap), BetaFlag::rate_already_zero};
  const double target = psi_percent / 100.0 * r0;
  // relative slack for round-off in the Shannon sum; a CQI step is far larger
  auto ok = [&](double beta) { return rate(beta) >= target * (1.0 - 1e-12); };

  double lo = 0.0;
  double hi = 0.0;
  if (ok(1.0)) {
    lo = 1.0;
    hi = 2.0;
    while (ok(hi)) {
      if (hi >= kBetaCap) return {linear_to_db(kBetaCap), BetaFlag::solved};
      lo = hi;
      hi = std::min(2.0 * hi, kBetaCap);
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (!ok(lo)) {
      if (lo <= kBetaFloor) return {linear_to_db(kBetaFloor), BetaFlag::lower_cap};
      hi = lo;
      lo = std::max(0.5 * lo, kBetaFloor);
    }
  }
  double lo_db = linear_to_db(lo);
  double hi_db = linear_to_db(hi);
  while (hi_db - lo_db > kBetaToleranceDb) {
    const double mid = 0.5 * (lo_db + hi_db);
    if (ok(db_to_linear(mid))) {
      lo_db = mid;
    } else {
      hi_db = mid;
    }
  }
  return {lo_db, BetaFlag::solved};
}

DynamicOutcome dynamic_update(std::span<const BetaReport> reports, const Eigen::VectorXd& current_p,
                              const PathlossModel& model, std::span<const BsConfig> indoor_bs,
                              const DynamicOptions& opt) {
  DynamicOutcome out;
  out.allocation.p_tx = current_p;
  out.allocation.objective_value = objective(opt.goal, current_p);
  if (reports.empty()) {
    out.kept_previous = true;
    out.diagnostic = "no reports";
    return out;
  }
  if (current_p.size() != static_cast<Eigen::Index>(indoor_bs.size())) {
    throw ConfigError("current allocation does not match the indoor BS list");
  }
  std::vector<Point2> points;
  points.reserve(reports.size());
  for (const auto& r : reports) points.push_back(r.position);
  const auto coupling = build_coupling_matrix(model, points, indoor_bs, opt.victim_height_m, opt.victim_gain_dbi);
  PowerProblem pr;
  pr.w = coupling.w * opt.model_error_scale;
  const Eigen::VectorXd estimate = pr.w * current_p;
  pr.i_max.resize(estimate.size());
  for (Eigen::Index n = 0; n < estimate.size(); ++n) {
    const double base = estimate[n] > 0.0 ? estimate[n] : opt.noise_floor_mw;
    pr.i_max[n] = db_to_linear(reports[static_cast<std::size_t>(n)].beta_db) * base;
  }
  pr.p_max = opt.p_max_mw;
  pr.goal = opt.goal;
  try {
    out.allocation = solve(pr);
  } catch (const SolverError& e) {
    out.kept_previous = true;
    out.diagnostic = e.what();
  }
  return out;
}

CalibrationResult calibrate_margin(const CampaignRunner& simulate, const std::vector<double>& gammas,
                                   double target) {
  if (gammas.empty()) throw ConfigError("margin sweep needs at least one candidate");
  if (!std::is_sorted(gammas.begin(), gammas.end())) throw ConfigError("margin candidates must be ascending");
  if (!(target > 0.0 && target < 1.0)) throw ConfigError("degradation target must be in (0, 1)");
  CalibrationResult res;
  res.baseline = simulate(std::nullopt);
  const double base = res.baseline.outdoor_p10_bps;
  for (double g : gammas) {
    CalibrationRow row;
    row.gamma_db = g;
    row.outcome = simulate(g);
    row.degradation = base > 0.0 ? 1.0 - row.outcome.outdoor_p10_bps / base : 0.0;
    res.sweep.push_back(row);
  }
  for (const auto& row : res.sweep) {
    if (row.degradation <= target) {
      res.gamma_db = row.gamma_db;
      res.target_met = true;
      return res;
    }
  }
  res.gamma_db = gammas.back();
  return res;
}

}  // namespace remsim

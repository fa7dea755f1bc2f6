#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "remsim/geometry.hpp"
#include "remsim/link.hpp"
#include "remsim/optim.hpp"
#include "remsim/propagation.hpp"
#include "remsim/scenario.hpp"

namespace remsim {

enum class SchemeKind { off, modified_lsa, cbrs, semi_static, semi_static_area, dynamic };

std::string to_string(SchemeKind s);
SchemeKind scheme_from_string(const std::string& s);
/// semi_static, semi_static_area and dynamic.
bool uses_rem(SchemeKind s);

struct SchemeConfig {
  SchemeKind scheme = SchemeKind::dynamic;
  double lsa_gamma_db = -3.0;    // modified LSA
  double belt_gamma_db = -20.0;  // semi-static, full belt (calibrated, 10% target)
  double area_gamma_db = -10.0;  // semi-static, restricted area (calibrated)
  double belt_spacing_m = 1.0;
  double belt_offset_m = 0.5;
  Rect protection_region{0.0, 0.0, 100.0, 50.0};
  double cbrs_pal_threshold_dbm = -96.0;        // per 10 MHz
  double cbrs_interference_limit_dbm = -80.0;   // per 10 MHz
  double cbrs_grid_spacing_m = 2.0;
  double psi_percent = 90.0;
  int update_period_ms = 10;
  int rem_delay_ms = 1;
  Goal goal = Goal::log_sum;
  double model_error_scale = 1.0;  // multiplies the controller's W

  /// Throws ConfigError. Margins outside [-60, 0] dB only produce warnings.
  void validate() const;
  std::vector<std::string> warnings() const;
};

/// -174 + 10 log10(B) - gamma - G + PL, in dBm.
double lsa_max_power_at_point(double gamma_db, double bandwidth_hz, double g_tx_dbi, double pl_db);

/// Largest received power allowed by an I/N target for a receiver with the
/// given noise figure and antenna gain: sigma_N + NF + I/N - G_rx (dBm).
double cept_max_rx_power_dbm(double bandwidth_hz, double i_over_n_db, double noise_figure_db,
                             double g_rx_dbi);
/// The same limit expressed as a transmit power over a link with PL and G_tx.
double cept_max_power_at_point(double bandwidth_hz, double i_over_n_db, double noise_figure_db,
                               double g_rx_dbi, double g_tx_dbi, double pl_db);
/// Margin that makes the belt rule coincide with the I/N rule: -(NF + I/N - G_rx).
/// -3 dB for I/N = -6 dB, NF = 9 dB, 0 dBi.
double cept_equivalent_gamma_db(double i_over_n_db, double noise_figure_db, double g_rx_dbi);

/// min(P_max, min over protection points of lsa_max_power_at_point), in dBm.
/// Points are evaluated at `victim_height_m`.
double lsa_static_power(const ProtectionGeometry& belt, const BsConfig& bs, double gamma_db,
                        const PathlossModel& model, double bandwidth_hz, double victim_height_m);

/// Per-10 MHz threshold rescaled to the system bandwidth.
double scale_per_10mhz(double dbm_per_10mhz, double bandwidth_hz);

/// Grid points (spacing over the whole area, building included) where the
/// strongest outdoor BS, at full power, is received above the threshold.
/// The threshold is per 10 MHz. May be empty.
ProtectionGeometry cbrs_pal_protection_area(const Scenario& scenario, double grid_spacing_m,
                                            const PathlossModel& model, double pal_threshold_dbm);

/// Sum-power allocation keeping the cumulative indoor interference at every
/// PAL point below the limit (per 10 MHz, rescaled to `bandwidth_hz`).
PowerAllocation cbrs_gaa_power(const ProtectionGeometry& pal_area, std::span<const BsConfig> indoor_bs,
                               const PathlossModel& model, double interference_limit_dbm,
                               double bandwidth_hz, double victim_height_m, double victim_gain_dbi);

/// Indoor BS powers (mW, in scenario.indoor_bs order) for the static
/// schemes. `off` gives zeros, `dynamic` the initial full-power allocation.
Eigen::VectorXd static_scheme_powers(const Scenario& scenario, const PathlossModel& model,
                                     const SchemeConfig& config);

struct BetaReport {
  int ue_id = 0;
  Point2 position;
  double beta_db = 0.0;
  int timestamp_ms = 0;
};

enum class BetaFlag { solved, no_external_interference, rate_already_zero, lower_cap };

struct BetaResult {
  double beta_db = 0.0;
  BetaFlag flag = BetaFlag::solved;
};

inline constexpr double kBetaCap = 1e6;
inline constexpr double kBetaFloor = 1e-6;
inline constexpr double kBetaToleranceDb = 0.01;

/// Largest beta such that R(S / (noise + I_in + beta I_out)) >= psi/100 R0,
/// with R0 the rate at beta = 0. Bisection in dB to kBetaToleranceDb; the
/// returned value is the feasible end of the final bracket. Returns the cap
/// when I_out is zero everywhere or R0 = 0, and the floor when even 1e-6
/// times the current interference misses the target.
BetaResult solve_beta(const SinrVector& components, double psi_percent, const RateMapper& mapper);

struct DynamicOptions {
  double p_max_mw = 125.89254117941673;
  double victim_height_m = 1.5;
  double victim_gain_dbi = 0.0;
  double noise_floor_mw = 0.0;  // used when a victim currently sees no indoor interference
  double model_error_scale = 1.0;
  Goal goal = Goal::log_sum;
};

struct DynamicOutcome {
  PowerAllocation allocation;
  bool kept_previous = false;
  std::string diagnostic;
};

/// One controller step: W from reported locations, I = W p_current,
/// limit = 10^(beta/10) I, then solve with the configured goal. Solver
/// errors leave the previous allocation in place.
DynamicOutcome dynamic_update(std::span<const BetaReport> reports, const Eigen::VectorXd& current_p,
                              const PathlossModel& model, std::span<const BsConfig> indoor_bs,
                              const DynamicOptions& options);

/// Numbers one campaign hands back to the margin calibration.
struct CampaignOutcome {
  double outdoor_p10_bps = 0.0;
  double outdoor_p10_ci_bps = 0.0;  // half-width across iterations, 0 if unknown
  double mean_indoor_power_mw = 0.0;
  double mean_indoor_rate_bps = 0.0;
};

/// Called with nullopt for the indoor-off baseline, otherwise with a margin.
using CampaignRunner = std::function<CampaignOutcome(std::optional<double> gamma_db)>;

struct CalibrationRow {
  double gamma_db = 0.0;
  CampaignOutcome outcome;
  double degradation = 0.0;  // 1 - p10 / baseline p10
};

struct CalibrationResult {
  double gamma_db = 0.0;
  bool target_met = false;
  CampaignOutcome baseline;
  std::vector<CalibrationRow> sweep;
};

/// Runs the baseline and every candidate; picks the most negative margin
/// whose degradation is <= target, or the most protective (largest) one with
/// target_met = false if none qualifies. Candidates must be ascending.
CalibrationResult calibrate_margin(const CampaignRunner& simulate, const std::vector<double>& gammas,
                                   double degradation_target);

}  // namespace remsim

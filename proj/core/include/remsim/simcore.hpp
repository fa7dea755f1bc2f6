#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "remsim/controllers.hpp"
#include "remsim/link.hpp"
#include "remsim/propagation.hpp"
#include "remsim/rem.hpp"
#include "remsim/scenario.hpp"
#include "remsim/stats.hpp"

namespace remsim {

/// One outdoor UE on a straight line at constant velocity. Keeps the BS it
/// was associated with at t = 0.
struct MovingUe {
  Point2 start;
  Point2 velocity_mps;
};

struct SimulationConfig {
  Scenario scenario = Scenario::reference();
  ClassParams outdoor_pathloss{43.3, 3.0, 0.0};
  ClassParams indoor_pathloss{43.3, 2.5, 0.0};
  ClassParams cross_wall_pathloss{43.3, 2.5, 20.0};
  UserCounts users;
  SchemeConfig scheme;
  FadingMode fading = FadingMode::block_rayleigh;
  RateMode beta_rate_mode = RateMode::narrowband_cqi;
  RateMapper mapper;
  bool icic = true;
  double pf_smoothing = 0.5;
  double pf_epsilon_bps = 1.0;
  int iterations = 200;
  int horizon_ms = 1000;
  int warmup_ms = 10;
  std::uint64_t seed = 1;
  bool indoor_enabled = true;
  /// Every indoor BS transmits nothing while indoor UEs are still simulated.
  bool force_indoor_zero = false;
  Quantizer quantizer;
  double location_error_m = 0.0;
  int threads = 0;  // 0: hardware concurrency
  bool record_traces = false;
  int trace_window_ms = 10;
  std::optional<MovingUe> moving_ue;

  void validate() const;
  PathlossModel pathloss_model() const;
};

std::vector<int> associate_ues(std::span<const UeConfig> ues, std::span<const BsConfig> all_bs,
                               const PathlossModel& model, double ue_height_m);

struct UeResult {
  int id = 0;
  Network network = Network::outdoor;
  Technology technology = Technology::lte;
  int serving_bs_id = 0;
  double mean_rate_bps = 0.0;
};

struct IterationResult {
  std::uint64_t seed = 0;
  std::vector<UeResult> ues;
  double mean_indoor_power_mw = 0.0;  // time average after warm-up, mean over indoor BSs
  int controller_updates = 0;
  int solver_fallbacks = 0;
  // filled when record_traces is set
  int trace_window_ms = 0;
  std::vector<std::vector<double>> window_rates_bps;  // [ue][window], served
  /// [ue][window], rate over every RB at the current CQIs (what beta protects)
  std::vector<std::vector<double>> window_achievable_bps;
  std::vector<int> update_ticks;
  std::vector<double> update_min_beta_db;
  std::vector<std::vector<double>> update_powers_mw;
};

/// One Monte Carlo iteration, advanced one 1 ms tick at a time.
class Simulation {
 public:
  /// `indoor_power_mw` is the allocation in force at t = 0 (from
  /// static_scheme_powers); pass an empty vector to compute it here.
  Simulation(const SimulationConfig& config, std::uint64_t iteration_seed,
             const Eigen::VectorXd& indoor_power_mw = {});
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void step();
  void run();
  int now_ms() const;

  const std::vector<UeConfig>& ues() const;
  const std::vector<BsConfig>& base_stations() const;  // outdoor first
  /// Index into base_stations() per UE.
  const std::vector<int>& serving() const;
  /// Components seen by each UE on the last completed tick.
  const SinrVector& components(std::size_t ue_index) const;
  std::span<const double> rb_power_mw(std::size_t bs_index) const;
  double total_power_mw(std::size_t bs_index) const;
  const Eigen::VectorXd& indoor_power_mw() const;
  /// RBs served to each UE on the last tick.
  const std::vector<double>& last_rates_bps() const;
  const RemStore& rem() const;

  IterationResult result() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Seed of iteration i, derived from the master seed.
std::uint64_t iteration_seed(std::uint64_t master, int iteration);

IterationResult run_iteration(const SimulationConfig& config, int iteration,
                              const Eigen::VectorXd& indoor_power_mw);

struct NetworkSummary {
  MeanCi mean_rate;                   // across iterations of the per-iteration UE mean
  double p10_rate = 0.0;              // nearest rank over pooled per-UE means
  MeanCi p10_by_iteration;
  std::vector<double> pooled_rates;
};

struct MetricsSummary {
  std::uint64_t seed = 0;
  SchemeKind scheme = SchemeKind::off;
  NetworkSummary outdoor;
  NetworkSummary indoor;
  MeanCi indoor_power_mw;
  Eigen::VectorXd initial_indoor_power_mw;
  int solver_fallbacks = 0;
  std::vector<IterationResult> iterations;
};

MetricsSummary summarize(std::vector<IterationResult> iterations, std::uint64_t seed, SchemeKind scheme);

/// Runs all iterations (concurrently when threads allow) and merges them in
/// iteration order, so the result does not depend on the thread count.
MetricsSummary run_campaign(const SimulationConfig& config);

CampaignOutcome outcome_of(const MetricsSummary& summary);

/// Runner for calibrate_margin: nullopt runs the indoor-off baseline, a
/// value sets the margin of the configured semi-static scheme.
CampaignRunner margin_runner(const SimulationConfig& base);

struct MovingUeSeries {
  int window_ms = 200;
  std::vector<double> time_ms;       // window start
  std::vector<double> position_x_m;  // moving UE at the window start
  std::vector<double> outdoor_rate_bps;
  std::vector<double> indoor_rate_bps;
};

/// A single outdoor UE moving along the building at `speed_kmh` for
/// `duration_ms`, AWGN channel; only indoor UE positions change between
/// iterations. Per-window means over iterations.
MovingUeSeries moving_ue_scenario(SimulationConfig config, double speed_kmh = 50.0, int duration_ms = 6000,
                                  int window_ms = 200);

}  // namespace remsim

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "remsim/config.hpp"
#include "remsim/controllers.hpp"
#include "remsim/simcore.hpp"

namespace remsim {

/// Two comment lines carried by every CSV:
///   # config_hash=<hex>,seed=<n>
///   # config=<canonical json>
void write_csv_header(std::ostream& out, const SimulationConfig& config);

/// iteration,ue,network,technology,serving_bs,mean_rate_bps
void write_ue_csv(std::ostream& out, const SimulationConfig& config, const MetricsSummary& summary);

/// rate_bps,cumulative_fraction over pooled per-UE means of one network.
void write_cdf_csv(std::ostream& out, const SimulationConfig& config, std::span<const double> rates);

/// All summary fields plus the config echo and seed.
void write_summary_json(std::ostream& out, const SimulationConfig& config, const MetricsSummary& summary);

/// gamma_db,outdoor_p10_bps,degradation_pct,mean_indoor_power_mw,mean_indoor_rate_bps;
/// the first row is the indoor-off baseline with an empty gamma.
void write_sweep_csv(std::ostream& out, const SimulationConfig& config, const CalibrationResult& result);

/// One row per scheme: scheme,network,mean_rate_bps,ci95_bps,p10_bps,mean_indoor_power_mw
void write_compare_csv(std::ostream& out, const SimulationConfig& config,
                       std::span<const MetricsSummary> summaries);

/// time_ms,position_x_m,outdoor_rate_bps,indoor_rate_bps
void write_moving_csv(std::ostream& out, const SimulationConfig& config, const MovingUeSeries& series);

}  // namespace remsim

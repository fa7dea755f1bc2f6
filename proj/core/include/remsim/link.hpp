#pragma once

#include <cmath>
#include <filesystem>
#include <span>
#include <vector>

#include "remsim/scenario.hpp"

namespace remsim {

struct NoiseModel {
  double bandwidth_hz = 20e6;
  double noise_figure_db = 0.0;
  double thermal_density_dbm_hz = -174.0;
};

/// -174 + 10 log10(B) + NF
double thermal_noise_power_dbm(const NoiseModel& noise);

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Exponential effective SINR mapping: -beta * ln(mean(exp(-sinr_i / beta))).
/// Works in the linear domain on both input and output.
double eesm_effective_sinr(std::span<const double> sinr, double beta);

struct CqiEntry {
  int index = 0;
  double min_sinr_db = 0.0;    // effective SINR needed to use this CQI
  double efficiency = 0.0;     // bit/s/Hz
  double eesm_beta = 1.0;
};

/// The 15-entry CQI table. Index 0 is "out of range": no transmission.
class CqiTable {
 public:
  explicit CqiTable(std::vector<CqiEntry> entries);

  /// LTE 4-bit CQI efficiencies with per-CQI 10% BLER thresholds and EESM
  /// calibration factors. Mirrors data/cqi_table_v1.csv.
  static CqiTable standard();
  /// Reads the versioned CSV format (see data/cqi_table_v1.csv).
  static CqiTable load_csv(const std::filesystem::path& path);

  int max_cqi() const { return static_cast<int>(entries_.size()); }
  const CqiEntry& entry(int cqi) const { return entries_.at(static_cast<std::size_t>(cqi - 1)); }
  double efficiency(int cqi) const { return cqi <= 0 ? 0.0 : entry(cqi).efficiency; }
  const std::vector<CqiEntry>& entries() const { return entries_; }
  /// Same rule as sinr_to_cqi on a linear SINR, without the log.
  int cqi_for_linear(double sinr_linear) const;

 private:
  std::vector<CqiEntry> entries_;
  std::vector<double> linear_thresholds_;
};

/// Largest CQI whose threshold is <= the effective SINR (ties take the
/// higher CQI). 0 means no transmission.
int sinr_to_cqi(double effective_sinr_db, const CqiTable& table);

/// CQI for one RB from its per-subcarrier SINRs: the largest CQI whose
/// EESM-compressed SINR, computed with that CQI's beta, clears its threshold.
int select_cqi(std::span<const double> subcarrier_sinr, const CqiTable& table);

/// Per-RB signal and interference components, all in mW.
struct SinrVector {
  std::vector<double> signal;
  std::vector<double> noise;
  std::vector<double> i_in;
  std::vector<double> i_out;

  explicit SinrVector(int n_rb = 0);
  int n_rb() const { return static_cast<int>(signal.size()); }
  double sinr(int rb) const { return signal[rb] / (noise[rb] + i_in[rb] + i_out[rb]); }
  /// SINR with the inter-network term multiplied by `beta`.
  double sinr_scaled(int rb, double beta) const {
    return signal[rb] / (noise[rb] + i_in[rb] + beta * i_out[rb]);
  }
  std::vector<double> linear() const;
};

enum class RateMode { narrowband_cqi, shannon };

/// R(SINR): maps per-RB SINRs to a bit rate.
struct RateMapper {
  RateMode mode = RateMode::narrowband_cqi;
  double rb_bandwidth_hz = 180e3;
  double nr_bonus = 1.05;
  CqiTable table = CqiTable::standard();

  double technology_factor(Technology t) const { return t == Technology::nr ? nr_bonus : 1.0; }
  /// Rate of one RB at the given linear SINR, before the 5G factor.
  double rb_rate(double sinr_linear) const;
  /// Rate of one RB at the given CQI, before the 5G factor.
  double rb_rate_for_cqi(int cqi) const { return table.efficiency(cqi) * rb_bandwidth_hz; }
  /// Sum over all supplied RBs.
  double rate(std::span<const double> sinr_linear, Technology t) const;
};

/// Sum of per-RB rates over `allocated_rbs` (narrowband mode uses the CQI
/// selected from each RB's SINR), scaled by 1.05 for 5G UEs.
double rate_of_allocation(Technology technology, std::span<const int> allocated_rbs,
                          const SinrVector& sinr, const RateMapper& mapper);

}  // namespace remsim

#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "remsim/controllers.hpp"
#include "remsim/geometry.hpp"
#include "remsim/scenario.hpp"

namespace remsim {

enum class QuantizerMode { none, two_bit };

/// Report quantizer. two_bit snaps to the nearest of {-6, -3, 3, 6} dB. Ties
/// go to the smaller magnitude, and between -3 and +3 (input 0) to -3.
struct Quantizer {
  QuantizerMode mode = QuantizerMode::none;
  std::vector<double> levels_db{-6.0, -3.0, 3.0, 6.0};

  double apply(double beta_db) const;
};

double quantize_beta(const Quantizer& q, double beta_db);

/// Moves the reported location uniformly within a disk of radius error_m.
BetaReport perturb_location(BetaReport report, double error_m, Rng& rng);

struct RateLogEntry {
  int ue_id = 0;
  Point2 position;
  double mean_rate_bps = 0.0;
  long samples = 0;
};

/// In-process REM: interference reports with a transport delay plus a
/// per-UE rate log. Deterministic; a snapshot is a plain copy.
class RemStore {
 public:
  RemStore(int rem_delay_ms, int update_period_ms);

  /// The report becomes visible at now_ms + delay.
  void submit_report(const BetaReport& report, int now_ms);
  /// Newest visible report of every UE, ordered by UE id.
  std::vector<BetaReport> snapshot(int now_ms) const;
  /// True at the tick the first report becomes visible and every update
  /// period after it; false while nothing is visible.
  bool due_for_update(int now_ms) const;

  void log_rate(int ue_id, Point2 position, double rate_bps);
  std::vector<RateLogEntry> rate_log() const;

  std::size_t report_count() const { return log_.size(); }
  int rem_delay_ms() const { return delay_; }
  int update_period_ms() const { return period_; }

  /// time_ms,visible_ms,ue,x,y,beta_db
  void write_report_csv(std::ostream& out) const;

 private:
  struct Entry {
    int submitted_ms;
    int visible_ms;
    BetaReport report;
  };
  int delay_;
  int period_;
  std::vector<Entry> log_;
  std::map<int, std::vector<std::size_t>> by_ue_;  // indices into log_, in submit order
  int first_visible_ms_ = -1;
  std::map<int, RateLogEntry> rates_;
};

}  // namespace remsim

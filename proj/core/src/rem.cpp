#include "remsim/rem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "remsim/error.hpp"

namespace remsim {

double Quantizer::apply(double beta_db) const {
  if (mode == QuantizerMode::none) return beta_db;
  if (levels_db.empty()) throw ConfigError("quantizer has no levels");
  double best = levels_db.front();
  double best_dist = std::abs(beta_db - best);
  for (double level : levels_db) {
    const double d = std::abs(beta_db - level);
    const bool tie_wins = d == best_dist && (std::abs(level) < std::abs(best) ||
                                             (std::abs(level) == std::abs(best) && level < best));
    if (d < best_dist || tie_wins) {
      best = level;
      best_dist = d;
    }
  }
  return best;
}

double quantize_beta(const Quantizer& q, double beta_db) { return q.apply(beta_db); }

BetaReport perturb_location(BetaReport report, double error_m, Rng& rng) {
  if (error_m < 0.0) throw ConfigError("location error must be non-negative");
  if (error_m == 0.0) return report;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = error_m * std::sqrt(u(rng));
  const double phi = 2.0 * std::numbers::pi * u(rng);
  report.position.x += r * std::cos(phi);
  report.position.y += r * std::sin(phi);
  return report;
}

RemStore::RemStore(int rem_delay_ms, int update_period_ms) : delay_(rem_delay_ms), period_(update_period_ms) {
  if (delay_ < 0) throw ConfigError("REM delay must be non-negative");
  if (period_ <= 0) throw ConfigError("update period must be positive");
}

void RemStore::submit_report(const BetaReport& report, int now_ms) {
  if (report.timestamp_ms > now_ms) throw ConfigError("report timestamp lies in the future");
  const int visible = now_ms + delay_;
  by_ue_[report.ue_id].push_back(log_.size());
  log_.push_back({now_ms, visible, report});
  if (first_visible_ms_ < 0 || visible < first_visible_ms_) first_visible_ms_ = visible;
}

std::vector<BetaReport> RemStore::snapshot(int now_ms) const {
  std::vector<BetaReport> out;
  for (const auto& [ue, idx] : by_ue_) {
    // visibility is monotone in submit order because the delay is fixed
    const auto it = std::partition_point(idx.begin(), idx.end(),
                                         [&](std::size_t i) { return log_[i].visible_ms <= now_ms; });
    if (it != idx.begin()) out.push_back(log_[*(it - 1)].report);
  }
  return out;
}

bool RemStore::due_for_update(int now_ms) const {
  if (first_visible_ms_ < 0 || now_ms < first_visible_ms_) return false;
  return (now_ms - first_visible_ms_) % period_ == 0;
}

void RemStore::log_rate(int ue_id, Point2 position, double rate_bps) {
  auto& e = rates_[ue_id];
  e.ue_id = ue_id;
  e.position = position;
  e.samples += 1;
  e.mean_rate_bps += (rate_bps - e.mean_rate_bps) / static_cast<double>(e.samples);
}

std::vector<RateLogEntry> RemStore::rate_log() const {
  std::vector<RateLogEntry> out;
  out.reserve(rates_.size());
  for (const auto& [id, e] : rates_) out.push_back(e);
  return out;
}

void RemStore::write_report_csv(std::ostream& out) const {
  out << "time_ms,visible_ms,ue,x,y,beta_db\n";
  for (const auto& e : log_) {
    out << e.report.timestamp_ms << ',' << e.visible_ms << ',' << e.report.ue_id << ',' << e.report.position.x
        << ',' << e.report.position.y << ',' << e.report.beta_db << '\n';
  }
}

}  // namespace remsim

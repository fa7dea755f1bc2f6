#include "remsim/report.hpp"

#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace remsim {
namespace {

using json = nlohmann::json;

json ci_json(const MeanCi& m) { return {{"mean", m.mean}, {"ci95", m.half_width}, {"n", m.n}}; }

json network_json(const NetworkSummary& n) {
  return {{"mean_rate_bps", ci_json(n.mean_rate)},
          {"p10_rate_bps", n.p10_rate},
          {"p10_by_iteration_bps", ci_json(n.p10_by_iteration)},
          {"ue_count", n.pooled_rates.size()}};
}

}  // namespace

void write_csv_header(std::ostream& out, const SimulationConfig& config) {
  out << "# config_hash=" << hash_hex(config_hash(config)) << ",seed=" << config.seed << "\n";
  out << "# config=" << config_to_json(config) << "\n";
}

void write_ue_csv(std::ostream& out, const SimulationConfig& config, const MetricsSummary& s) {
  write_csv_header(out, config);
  out << std::setprecision(10);
  out << "iteration,ue,network,technology,serving_bs,mean_rate_bps\n";
  for (std::size_t i = 0; i < s.iterations.size(); ++i) {
    for (const auto& ue : s.iterations[i].ues) {
      out << i << ',' << ue.id << ',' << to_string(ue.network) << ',' << to_string(ue.technology) << ','
          << ue.serving_bs_id << ',' << ue.mean_rate_bps << '\n';
    }
  }
}

void write_cdf_csv(std::ostream& out, const SimulationConfig& config, std::span<const double> rates) {
  write_csv_header(out, config);
  out << std::setprecision(10);
  out << "rate_bps,cumulative_fraction\n";
  for (const auto& p : empirical_cdf(rates)) out << p.value << ',' << p.fraction << '\n';
}

void write_summary_json(std::ostream& out, const SimulationConfig& config, const MetricsSummary& s) {
  json powers = json::array();
  for (Eigen::Index a = 0; a < s.initial_indoor_power_mw.size(); ++a) powers.push_back(s.initial_indoor_power_mw[a]);
  json j = {
      {"config_hash", hash_hex(config_hash(config))},
      {"seed", s.seed},
      {"scheme", to_string(s.scheme)},
      {"iterations", s.iterations.size()},
      {"outdoor", network_json(s.outdoor)},
      {"indoor", network_json(s.indoor)},
      {"mean_indoor_power_mw", ci_json(s.indoor_power_mw)},
      {"initial_indoor_power_mw", powers},
      {"solver_fallbacks", s.solver_fallbacks},
      {"config", json::parse(config_to_json(config))},
  };
  out << j.dump(2) << "\n";
}

void write_sweep_csv(std::ostream& out, const SimulationConfig& config, const CalibrationResult& r) {
  write_csv_header(out, config);
  out << "# selected_gamma_db=" << r.gamma_db << ",target_met=" << (r.target_met ? "true" : "false") << "\n";
  out << std::setprecision(10);
  out << "gamma_db,outdoor_p10_bps,degradation_pct,mean_indoor_power_mw,mean_indoor_rate_bps\n";
  out << "," << r.baseline.outdoor_p10_bps << ",0," << r.baseline.mean_indoor_power_mw << ','
      << r.baseline.mean_indoor_rate_bps << '\n';
  for (const auto& row : r.sweep) {
    out << row.gamma_db << ',' << row.outcome.outdoor_p10_bps << ',' << 100.0 * row.degradation << ','
        << row.outcome.mean_indoor_power_mw << ',' << row.outcome.mean_indoor_rate_bps << '\n';
  }
}

void write_compare_csv(std::ostream& out, const SimulationConfig& config, std::span<const MetricsSummary> summaries) {
  write_csv_header(out, config);
  out << std::setprecision(10);
  out << "scheme,network,mean_rate_bps,ci95_bps,p10_bps,mean_indoor_power_mw\n";
  for (const auto& s : summaries) {
    for (const auto* n : {&s.outdoor, &s.indoor}) {
      out << to_string(s.scheme) << ',' << (n == &s.outdoor ? "outdoor" : "indoor") << ',' << n->mean_rate.mean
          << ',' << n->mean_rate.half_width << ',' << n->p10_rate << ',' << s.indoor_power_mw.mean << '\n';
    }
  }
}

void write_moving_csv(std::ostream& out, const SimulationConfig& config, const MovingUeSeries& s) {
  write_csv_header(out, config);
  out << std::setprecision(10);
  out << "time_ms,position_x_m,outdoor_rate_bps,indoor_rate_bps\n";
  for (std::size_t w = 0; w < s.time_ms.size(); ++w) {
    out << s.time_ms[w] << ',' << s.position_x_m[w] << ',' << s.outdoor_rate_bps[w] << ',' << s.indoor_rate_bps[w]
        << '\n';
  }
}

}  // namespace remsim

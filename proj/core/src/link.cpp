#include "remsim/link.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "remsim/error.hpp"

namespace remsim {

double thermal_noise_power_dbm(const NoiseModel& noise) {
  return noise.thermal_density_dbm_hz + 10.0 * std::log10(noise.bandwidth_hz) +
         noise.noise_figure_db;
}

double eesm_effective_sinr(std::span<const double> sinr, double beta) {
  if (sinr.empty()) throw ConfigError("EESM needs at least one SINR sample");
  if (!(beta > 0.0)) throw ConfigError("EESM beta must be positive");
  if (sinr.size() == 1) return sinr.front();
  // shift by the minimum so the exponentials cannot all underflow
  const double floor = *std::min_element(sinr.begin(), sinr.end());
  double acc = 0.0;
  for (double g : sinr) acc += std::exp(-(g - floor) / beta);
  return floor - beta * std::log(acc / static_cast<double>(sinr.size()));
}

CqiTable::CqiTable(std::vector<CqiEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("CQI table is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index != static_cast<int>(i) + 1) throw ConfigError("CQI table indices must be 1..N");
    if (!(e.efficiency > 0.0) || !(e.eesm_beta > 0.0)) {
      throw ConfigError("CQI table efficiency and EESM beta must be positive");
    }
    if (i > 0) {
      if (!(e.min_sinr_db > entries_[i - 1].min_sinr_db)) {
        throw ConfigError("CQI thresholds must be strictly increasing");
      }
      if (!(e.efficiency > entries_[i - 1].efficiency)) {
        throw ConfigError("CQI efficiencies must be strictly increasing");
      }
    }
    linear_thresholds_.push_back(db_to_linear(e.min_sinr_db));
  }
}

int CqiTable::cqi_for_linear(double sinr_linear) const {
  const auto it = std::upper_bound(linear_thresholds_.begin(), linear_thresholds_.end(), sinr_linear);
  return static_cast<int>(it - linear_thresholds_.begin());
}

CqiTable CqiTable::standard() {
  return CqiTable({
      {1, -6.7, 0.152, 1.49},  {2, -4.7, 0.234, 1.53},  {3, -2.3, 0.377, 1.57},
      {4, 0.2, 0.601, 1.61},   {5, 2.4, 0.877, 1.63},   {6, 4.3, 1.175, 1.65},
      {7, 5.9, 1.476, 3.36},   {8, 8.1, 1.914, 4.56},   {9, 10.3, 2.406, 6.42},
      {10, 11.7, 2.730, 7.33}, {11, 14.1, 3.322, 7.68}, {12, 16.3, 3.902, 9.21},
      {13, 18.7, 4.523, 10.81}, {14, 21.0, 5.115, 13.76}, {15, 22.7, 5.554, 17.52},
  });
}

CqiTable CqiTable::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CQI table " + path.string());
  std::vector<CqiEntry> entries;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line.rfind("cqi,min_sinr_db,efficiency,eesm_beta", 0) != 0) {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": unexpected header");
      }
      header_seen = true;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    CqiEntry e;
    if (!(row >> e.index >> e.min_sinr_db >> e.efficiency >> e.eesm_beta)) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    }
    entries.push_back(e);
  }
  return CqiTable(std::move(entries));
}

int sinr_to_cqi(double effective_sinr_db, const CqiTable& table) {
  const auto& e = table.entries();
  const auto it = std::upper_bound(
      e.begin(), e.end(), effective_sinr_db,
      [](double v, const CqiEntry& entry) { return v < entry.min_sinr_db; });
  return static_cast<int>(it - e.begin());
}

int select_cqi(std::span<const double> subcarrier_sinr, const CqiTable& table) {
  if (subcarrier_sinr.size() == 1) return sinr_to_cqi(linear_to_db(subcarrier_sinr[0]), table);
  for (int k = table.max_cqi(); k >= 1; --k) {
    const CqiEntry& e = table.entry(k);
    if (linear_to_db(eesm_effective_sinr(subcarrier_sinr, e.eesm_beta)) >= e.min_sinr_db) return k;
  }
  return 0;
}

SinrVector::SinrVector(int n_rb)
    : signal(static_cast<std::size_t>(n_rb), 0.0),
      noise(static_cast<std::size_t>(n_rb), 0.0),
      i_in(static_cast<std::size_t>(n_rb), 0.0),
      i_out(static_cast<std::size_t>(n_rb), 0.0) {}

std::vector<double> SinrVector::linear() const {
  std::vector<double> out(signal.size());
  for (int rb = 0; rb < n_rb(); ++rb) out[rb] = sinr(rb);
  return out;
}

double RateMapper::rb_rate(double sinr_linear) const {
  if (mode == RateMode::shannon) return rb_bandwidth_hz * std::log2(1.0 + sinr_linear);
  return rb_rate_for_cqi(table.cqi_for_linear(sinr_linear));
}

double RateMapper::rate(std::span<const double> sinr_linear, Technology t) const {
  double total = 0.0;
  for (double s : sinr_linear) total += rb_rate(s);
  return total * technology_factor(t);
}

double rate_of_allocation(Technology technology, std::span<const int> allocated_rbs,
                          const SinrVector& sinr, const RateMapper& mapper) {
  double total = 0.0;
  for (int rb : allocated_rbs) {
    if (rb < 0 || rb >= sinr.n_rb()) throw ConfigError("allocated RB out of range");
    total += mapper.rb_rate(sinr.sinr(rb));
  }
  return total * mapper.technology_factor(technology);
}

}  // namespace remsim

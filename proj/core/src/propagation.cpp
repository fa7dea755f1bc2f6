#include "remsim/propagation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "remsim/error.hpp"

namespace remsim {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

PathlossModel::PathlossModel(Polygon building, ClassParams outdoor, ClassParams indoor,
                             ClassParams cross_wall)
    : building_(std::move(building)), outdoor_(outdoor), indoor_(indoor), cross_wall_(cross_wall) {
  for (const ClassParams* p : {&outdoor_, &indoor_, &cross_wall_}) {
    if (!(p->exponent > 0.0)) throw ConfigError("pathloss exponent must be positive");
    if (!(p->wall_loss_db >= 0.0)) throw ConfigError("wall loss must be non-negative");
  }
}

double free_space_reference_loss_db(double carrier_hz) {
  return 20.0 * std::log10(4.0 * std::numbers::pi * carrier_hz / kSpeedOfLight);
}

PathlossModel PathlossModel::reference(Polygon building, double carrier_hz) {
  const double ref = free_space_reference_loss_db(carrier_hz);
  return PathlossModel(std::move(building), {ref, 3.0, 0.0}, {ref, 2.5, 0.0}, {ref, 2.5, 20.0});
}

LinkClass PathlossModel::classify(Point2 a, Point2 b) const {
  const bool ia = building_.contains(a);
  const bool ib = building_.contains(b);
  if (ia != ib) return LinkClass::cross_wall;
  return ia ? LinkClass::indoor_to_indoor : LinkClass::outdoor_to_outdoor;
}

const ClassParams& PathlossModel::params(LinkClass c) const {
  switch (c) {
    case LinkClass::outdoor_to_outdoor: return outdoor_;
    case LinkClass::indoor_to_indoor: return indoor_;
    case LinkClass::cross_wall: return cross_wall_;
  }
  return outdoor_;
}

Pathloss pathloss_db(const PathlossModel& model, Point3 a, Point3 b) {
  const LinkClass cls = model.classify(a.xy(), b.xy());
  const ClassParams& p = model.params(cls);
  double d = distance(a, b);
  Pathloss out;
  if (d < 1.0) {
    d = 1.0;
    out.distance_clamped = true;
  }
  out.db = p.reference_loss_db + 10.0 * p.exponent * std::log10(d);
  if (cls == LinkClass::cross_wall) out.db += p.wall_loss_db;
  return out;
}

double coupling_gain(double pl_db, double g_tx_dbi, double g_rx_dbi) {
  return std::pow(10.0, (-pl_db + g_tx_dbi + g_rx_dbi) / 10.0);
}

CouplingMatrix build_coupling_matrix(const PathlossModel& model,
                                     std::span<const Point2> victim_points,
                                     std::span<const BsConfig> indoor_bs,
                                     double victim_height_m, double victim_gain_dbi) {
  if (victim_points.empty()) throw ConfigError("coupling matrix needs at least one victim point");
  CouplingMatrix cm;
  const auto rows = static_cast<Eigen::Index>(victim_points.size());
  const auto cols = static_cast<Eigen::Index>(indoor_bs.size());
  cm.w.resize(rows, cols);
  cm.victim_points.assign(victim_points.begin(), victim_points.end());
  for (const auto& bs : indoor_bs) cm.bs_ids.push_back(bs.id);
  for (Eigen::Index n = 0; n < rows; ++n) {
    const Point3 victim = lift(victim_points[static_cast<std::size_t>(n)], victim_height_m);
    for (Eigen::Index a = 0; a < cols; ++a) {
      const BsConfig& bs = indoor_bs[static_cast<std::size_t>(a)];
      const double pl = pathloss_db(model, bs.position, victim).db;
      cm.w(n, a) = coupling_gain(pl, bs.antenna_gain_dbi, victim_gain_dbi);
    }
  }
  return cm;
}

void write_coupling_csv(const CouplingMatrix& w, std::ostream& out) {
  out << "point,x,y";
  for (int id : w.bs_ids) out << ",bs_" << id;
  out << '\n';
  const auto precision = out.precision(17);
  for (Eigen::Index n = 0; n < w.rows(); ++n) {
    const Point2 p = w.victim_points[static_cast<std::size_t>(n)];
    out << n << ',' << p.x << ',' << p.y;
    for (Eigen::Index a = 0; a < w.cols(); ++a) out << ',' << w.w(n, a);
    out << '\n';
  }
  out.precision(precision);
}

double doppler_hz(double speed_kmh, double carrier_hz) {
  return (speed_kmh / 3.6) * carrier_hz / kSpeedOfLight;
}

double coherence_time_ms(double speed_kmh, double carrier_hz) {
  const double fd = doppler_hz(speed_kmh, carrier_hz);
  if (fd <= 0.0) return std::numeric_limits<double>::infinity();
  return 1000.0 * 0.423 / fd;
}

FadingProcess::FadingProcess(FadingMode mode, int n_rb, double speed_kmh, double carrier_hz,
                             Rng& rng)
    : mode_(mode),
      coherence_ms_(remsim::coherence_time_ms(speed_kmh, carrier_hz)),
      h_(static_cast<std::size_t>(n_rb), {1.0, 0.0}),
      power_(static_cast<std::size_t>(n_rb), 1.0) {
  if (n_rb < 1) throw ConfigError("fading process needs at least one RB");
  if (speed_kmh < 0.0) throw ConfigError("UE speed must be non-negative");
  if (mode_ == FadingMode::awgn) return;
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (std::size_t k = 0; k < h_.size(); ++k) {
    h_[k] = {normal(rng), normal(rng)};
    power_[k] = std::norm(h_[k]);
  }
}

std::span<const double> FadingProcess::advance(double dt_ms, Rng& rng) {
  if (mode_ == FadingMode::awgn || !std::isfinite(coherence_ms_)) return power_;
  const double rho = std::exp(-dt_ms / coherence_ms_);
  const double innovation = std::sqrt(1.0 - rho * rho);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (std::size_t k = 0; k < h_.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    h_[k] = rho * h_[k] + innovation * std::complex<double>(re, im);
    power_[k] = std::norm(h_[k]);
  }
  return power_;
}

std::span<const double> sample_fading(FadingProcess& process, double dt_ms, Rng& rng) {
  return process.advance(dt_ms, rng);
}

}  // namespace remsim

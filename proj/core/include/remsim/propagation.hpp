#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "remsim/geometry.hpp"
#include "remsim/scenario.hpp"

namespace remsim {

enum class LinkClass { outdoor_to_outdoor, indoor_to_indoor, cross_wall };

/// Log-distance parameters for one link class.
struct ClassParams {
  double reference_loss_db = 43.3;  // at 1 m
  double exponent = 3.0;
  double wall_loss_db = 0.0;  // only applied to cross_wall links
};

/// Log-distance pathloss with a single wall-penetration term for links that
/// cross the building boundary. Knows the building so it can classify links.
class PathlossModel {
 public:
  PathlossModel(Polygon building, ClassParams outdoor, ClassParams indoor, ClassParams cross_wall);

  /// Free-space reference loss at 1 m for the carrier; outdoor exponent 3.0,
  /// indoor 2.5, cross-wall 2.5 plus 20 dB wall loss.
  static PathlossModel reference(Polygon building, double carrier_hz);

  LinkClass classify(Point2 a, Point2 b) const;
  const ClassParams& params(LinkClass c) const;
  const Polygon& building() const { return building_; }

 private:
  Polygon building_;
  ClassParams outdoor_;
  ClassParams indoor_;
  ClassParams cross_wall_;
};

double free_space_reference_loss_db(double carrier_hz);

struct Pathloss {
  double db = 0.0;
  bool distance_clamped = false;  // 3-D distance was below 1 m and got clamped
};

/// reference_loss + 10 * exponent * log10(d_3D) (+ wall loss on cross-wall links).
Pathloss pathloss_db(const PathlossModel& model, Point3 a, Point3 b);

/// 10^((-pl + g_tx + g_rx) / 10)
double coupling_gain(double pl_db, double g_tx_dbi, double g_rx_dbi);

/// Linear gains from each indoor BS (columns) to each victim point (rows).
struct CouplingMatrix {
  Eigen::MatrixXd w;
  std::vector<Point2> victim_points;
  std::vector<int> bs_ids;

  Eigen::Index rows() const { return w.rows(); }
  Eigen::Index cols() const { return w.cols(); }
  /// Estimated interference (mW) at every victim point for powers in mW.
  Eigen::VectorXd interference(const Eigen::VectorXd& p_tx_mw) const { return w * p_tx_mw; }
};

CouplingMatrix build_coupling_matrix(const PathlossModel& model,
                                     std::span<const Point2> victim_points,
                                     std::span<const BsConfig> indoor_bs,
                                     double victim_height_m, double victim_gain_dbi);

/// One header row (point,x,y,bs_<id>...) then one row per victim point.
void write_coupling_csv(const CouplingMatrix& w, std::ostream& out);

enum class FadingMode { awgn, block_rayleigh };

double doppler_hz(double speed_kmh, double carrier_hz);
/// Coherence time 0.423 / f_D, in ms. Infinite for a static terminal.
double coherence_time_ms(double speed_kmh, double carrier_hz);

/// Per-RB block Rayleigh channel. Each RB carries one unit-power complex
/// gain that evolves as a first-order autoregression whose correlation over
/// dt is exp(-dt / T_c). AWGN mode keeps every gain at exactly 1.
class FadingProcess {
 public:
  FadingProcess(FadingMode mode, int n_rb, double speed_kmh, double carrier_hz, Rng& rng);

  /// Advances the process by dt_ms and returns per-RB power gains |h|^2.
  std::span<const double> advance(double dt_ms, Rng& rng);

  std::span<const double> power_gains() const { return power_; }
  std::span<const std::complex<double>> coefficients() const { return h_; }
  double coherence_time_ms() const { return coherence_ms_; }
  FadingMode mode() const { return mode_; }

 private:
  FadingMode mode_;
  double coherence_ms_;
  std::vector<std::complex<double>> h_;
  std::vector<double> power_;
};

/// Free-function form of FadingProcess::advance.
std::span<const double> sample_fading(FadingProcess& process, double dt_ms, Rng& rng);

}  // namespace remsim

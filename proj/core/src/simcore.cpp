#include "remsim/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "remsim/error.hpp"
#include "remsim/scheduler.hpp"

namespace remsim {
namespace {

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint32_t> tags) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  words.insert(words.end(), tags);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

// Ticks between fading updates: the channel is held for a tenth of the
// coherence time (at most 50 ms), never for a static terminal.
int fading_interval_ms(double speed_kmh, double carrier_hz) {
  const double tc = coherence_time_ms(speed_kmh, carrier_hz);
  if (!std::isfinite(tc)) return std::numeric_limits<int>::max();
  return std::clamp(static_cast<int>(std::floor(tc / 10.0)), 1, 50);
}

}  // namespace

void SimulationConfig::validate() const {
  scenario.validate();
  scheme.validate();
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (horizon_ms < scheme.update_period_ms && moving_ue == std::nullopt) {
    throw ConfigError("horizon_ms must be at least the update period");
  }
  if (warmup_ms < 0 || warmup_ms >= horizon_ms) throw ConfigError("warmup_ms must be in [0, horizon_ms)");
  if (!(pf_smoothing > 0.0 && pf_smoothing <= 1.0)) throw ConfigError("pf_smoothing must be in (0, 1]");
  if (!(pf_epsilon_bps > 0.0)) throw ConfigError("pf_epsilon_bps must be positive");
  if (!(location_error_m >= 0.0)) throw ConfigError("location_error_m must be non-negative");
  if (trace_window_ms < 1) throw ConfigError("trace_window_ms must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (users.indoor_uniform < 0 || users.indoor_cluster < 0 || users.outdoor < 0) {
    throw ConfigError("user counts must be non-negative");
  }
  if (!(users.nr_probability >= 0.0 && users.nr_probability <= 1.0)) {
    throw ConfigError("nr_probability must be in [0, 1]");
  }
  if (!(users.walking_fraction >= 0.0 && users.walking_fraction <= 1.0)) {
    throw ConfigError("walking_fraction must be in [0, 1]");
  }
  for (const auto* p : {&outdoor_pathloss, &indoor_pathloss, &cross_wall_pathloss}) {
    if (!(p->exponent > 0.0) || !(p->wall_loss_db >= 0.0) || !std::isfinite(p->reference_loss_db)) {
      throw ConfigError("pathloss exponent must be positive and wall loss non-negative");
    }
  }
  if (scenario.indoor_bs.size() > 1) {
    for (const auto& b : scenario.indoor_bs) {
      if (b.max_power_dbm != scenario.indoor_bs.front().max_power_dbm) {
        throw ConfigError("indoor BSs must share one maximum power");
      }
    }
  }
}

PathlossModel SimulationConfig::pathloss_model() const {
  return PathlossModel(scenario.building, outdoor_pathloss, indoor_pathloss, cross_wall_pathloss);
}

std::vector<int> associate_ues(std::span<const UeConfig> ues, std::span<const BsConfig> all_bs,
                               const PathlossModel& model, double ue_height_m) {
  std::vector<int> out(ues.size(), -1);
  for (std::size_t u = 0; u < ues.size(); ++u) {
    double best = -std::numeric_limits<double>::infinity();
    int best_id = std::numeric_limits<int>::max();
    for (std::size_t b = 0; b < all_bs.size(); ++b) {
      const auto& bs = all_bs[b];
      if (bs.network != ues[u].network) continue;
      const double rx = bs.max_power_dbm + bs.antenna_gain_dbi + ues[u].antenna_gain_dbi -
                        pathloss_db(model, bs.position, lift(ues[u].position, ue_height_m)).db;
      if (rx > best || (rx == best && bs.id < best_id)) {
        best = rx;
        best_id = bs.id;
        out[u] = static_cast<int>(b);
      }
    }
  }
  return out;
}

struct Simulation::Impl {
  SimulationConfig cfg;
  PathlossModel model;
  std::vector<BsConfig> bs;
  std::vector<BsConfig> indoor_bs;
  int n_out_bs = 0;
  int nb = 0;
  int nu = 0;
  int n_rb = 0;
  std::vector<UeConfig> ues;
  std::vector<int> serving;
  std::vector<bool> active;
  std::vector<double> gain;  // [u * nb + b]
  std::vector<std::unique_ptr<FadingProcess>> fade;
  std::vector<Rng> link_rng;
  std::vector<int> fade_interval;
  std::vector<int> next_fade;
  std::vector<double> noise_rb;
  std::vector<std::vector<double>> rb_power;
  std::vector<double> bs_total;
  Eigen::VectorXd indoor_p;
  std::vector<SinrVector> comps;
  std::vector<std::vector<int>> cqi_prev;
  std::vector<std::vector<int>> cqi_now;
  std::vector<std::vector<int>> cell_ues;
  std::vector<PfState> pf;
  RemStore rem;
  std::vector<BetaReport> pending;
  std::vector<Rng> ue_rng;
  bool dynamic = false;
  bool indoor_on = true;
  DynamicOptions dyn;
  RateMapper beta_mapper;
  int moving_index = -1;
  int t = 0;

  std::vector<double> last_rate;
  std::vector<double> rate_sum;
  long stat_ticks = 0;
  double power_sum = 0.0;
  int updates = 0;
  int fallbacks = 0;
  std::vector<std::vector<double>> window_rates;
  std::vector<std::vector<double>> window_achievable;
  std::vector<int> update_ticks;
  std::vector<double> update_min_beta;
  std::vector<std::vector<double>> update_powers;
  std::uint64_t seed = 0;

  Impl(const SimulationConfig& c, std::uint64_t s, const Eigen::VectorXd& p0)
      : cfg(c), model(c.pathloss_model()), rem(c.scheme.rem_delay_ms, c.scheme.update_period_ms), seed(s) {
    const Scenario& sc = cfg.scenario;
    bs = sc.all_bs();
    indoor_bs = sc.indoor_bs;
    n_out_bs = static_cast<int>(sc.outdoor_bs.size());
    nb = static_cast<int>(bs.size());
    n_rb = sc.n_rb;
    indoor_on = cfg.indoor_enabled && !cfg.force_indoor_zero;
    dynamic = cfg.scheme.scheme == SchemeKind::dynamic && indoor_on;

    Rng placement = make_rng(seed, {0x504c});
    ues = place_users(sc, cfg.users, placement);
    if (cfg.moving_ue) {
      UeConfig m;
      m.id = ues.empty() ? 0 : ues.back().id + 1;
      m.position = cfg.moving_ue->start;
      m.technology = Technology::lte;
      m.speed_kmh = std::hypot(cfg.moving_ue->velocity_mps.x, cfg.moving_ue->velocity_mps.y) * 3.6;
      m.antenna_gain_dbi = sc.ue_antenna_gain_dbi;
      m.noise_figure_db = sc.ue_noise_figure_db;
      m.network = Network::outdoor;
      moving_index = static_cast<int>(ues.size());
      ues.push_back(m);
    }
    nu = static_cast<int>(ues.size());
    serving = associate_ues(ues, bs, model, sc.ue_height_m);
    active.resize(nu);
    for (int u = 0; u < nu; ++u) active[u] = ues[u].network == Network::outdoor || cfg.indoor_enabled;

    gain.assign(static_cast<std::size_t>(nu) * nb, 0.0);
    for (int u = 0; u < nu; ++u) refresh_gains(u);

    fade.resize(static_cast<std::size_t>(nu) * nb);
    fade_interval.assign(nu, std::numeric_limits<int>::max());
    next_fade.assign(nu, std::numeric_limits<int>::max());
    if (cfg.fading != FadingMode::awgn) {
      link_rng.reserve(static_cast<std::size_t>(nu) * nb);
      for (int u = 0; u < nu; ++u) {
        for (int b = 0; b < nb; ++b) {
          link_rng.push_back(make_rng(seed, {1, static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(b)}));
          fade[u * nb + b] = std::make_unique<FadingProcess>(cfg.fading, n_rb, ues[u].speed_kmh, sc.carrier_hz,
                                                             link_rng.back());
        }
        fade_interval[u] = fading_interval_ms(ues[u].speed_kmh, sc.carrier_hz);
        next_fade[u] = fade_interval[u];
      }
    }
    for (int u = 0; u < nu; ++u) ue_rng.push_back(make_rng(seed, {2, static_cast<std::uint32_t>(u)}));

    noise_rb.resize(nu);
    for (int u = 0; u < nu; ++u) {
      noise_rb[u] = dbm_to_mw(thermal_noise_power_dbm({sc.rb_bandwidth_hz, ues[u].noise_figure_db, -174.0}));
    }
    comps.assign(nu, SinrVector(n_rb));
    cqi_prev.assign(nu, std::vector<int>(n_rb, 0));
    cqi_now.assign(nu, std::vector<int>(n_rb, 0));

    cell_ues.assign(nb, {});
    for (int u = 0; u < nu; ++u) {
      if (active[u]) cell_ues[serving[u]].push_back(u);
    }
    for (auto& list : cell_ues) {
      std::sort(list.begin(), list.end(), [&](int a, int b) { return ues[a].id < ues[b].id; });
    }
    for (int b = 0; b < nb; ++b) pf.emplace_back(cell_ues[b].size(), cfg.pf_smoothing);

    rb_power.assign(nb, std::vector<double>(n_rb, 0.0));
    bs_total.assign(nb, 0.0);
    for (int b = 0; b < n_out_bs; ++b) set_power(b, dbm_to_mw(bs[b].max_power_dbm));
    if (!indoor_on) {
      indoor_p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(indoor_bs.size()));
    } else if (p0.size() == static_cast<Eigen::Index>(indoor_bs.size())) {
      indoor_p = p0;
    } else if (p0.size() == 0) {
      indoor_p = static_scheme_powers(sc, model, cfg.scheme);
    } else {
      throw ConfigError("initial indoor allocation has the wrong size");
    }
    apply_indoor_powers();

    dyn.p_max_mw = indoor_bs.empty() ? 0.0 : dbm_to_mw(indoor_bs.front().max_power_dbm);
    dyn.victim_height_m = sc.ue_height_m;
    dyn.victim_gain_dbi = sc.ue_antenna_gain_dbi;
    dyn.noise_floor_mw = dbm_to_mw(thermal_noise_power_dbm({sc.bandwidth_hz, sc.ue_noise_figure_db, -174.0}));
    dyn.model_error_scale = cfg.scheme.model_error_scale;
    dyn.goal = cfg.scheme.goal;
    beta_mapper = cfg.mapper;
    beta_mapper.mode = cfg.beta_rate_mode;

    last_rate.assign(nu, 0.0);
    rate_sum.assign(nu, 0.0);
    if (cfg.record_traces) {
      const int windows = (cfg.horizon_ms + cfg.trace_window_ms - 1) / cfg.trace_window_ms;
      window_rates.assign(nu, std::vector<double>(static_cast<std::size_t>(windows), 0.0));
      window_achievable = window_rates;
    }
  }

  void refresh_gains(int u) {
    const Point3 at = lift(ues[u].position, cfg.scenario.ue_height_m);
    for (int b = 0; b < nb; ++b) {
      gain[u * nb + b] = coupling_gain(pathloss_db(model, bs[b].position, at).db, bs[b].antenna_gain_dbi,
                                       ues[u].antenna_gain_dbi);
    }
  }

  void set_power(int b, double total_mw) {
    bs_total[b] = total_mw;
    rb_power[b] = cfg.icic ? icic_power_mask(b, total_mw, n_rb).per_rb_power_mw
                           : uniform_power_mask(total_mw, n_rb).per_rb_power_mw;
  }

  void apply_indoor_powers() {
    for (Eigen::Index a = 0; a < indoor_p.size(); ++a) set_power(n_out_bs + static_cast<int>(a), indoor_p[a]);
  }

  void compute_components(int u) {
    SinrVector& c = comps[u];
    std::fill(c.signal.begin(), c.signal.end(), 0.0);
    std::fill(c.i_in.begin(), c.i_in.end(), 0.0);
    std::fill(c.i_out.begin(), c.i_out.end(), 0.0);
    std::fill(c.noise.begin(), c.noise.end(), noise_rb[u]);
    for (int b = 0; b < nb; ++b) {
      if (!(bs_total[b] > 0.0)) continue;
      std::vector<double>& target =
          b == serving[u] ? c.signal : (bs[b].network == ues[u].network ? c.i_in : c.i_out);
      const double g = gain[u * nb + b];
      const double* p = rb_power[b].data();
      if (fade[u * nb + b]) {
        const auto f = fade[u * nb + b]->power_gains();
        for (int rb = 0; rb < n_rb; ++rb) target[rb] += p[rb] * g * f[rb];
      } else {
        for (int rb = 0; rb < n_rb; ++rb) target[rb] += p[rb] * g;
      }
    }
  }

  void step() {
    for (const auto& r : pending) rem.submit_report(r, t);
    pending.clear();

    if (moving_index >= 0) {
      const auto& m = *cfg.moving_ue;
      ues[moving_index].position = {m.start.x + m.velocity_mps.x * t / 1000.0, m.start.y + m.velocity_mps.y * t / 1000.0};
      refresh_gains(moving_index);
    }
    for (int u = 0; u < nu; ++u) {
      if (!active[u] || t < next_fade[u]) continue;
      for (int b = 0; b < nb; ++b) fade[u * nb + b]->advance(fade_interval[u], link_rng[u * nb + b]);
      next_fade[u] += fade_interval[u];
    }

    const CqiTable& table = cfg.mapper.table;
    for (int u = 0; u < nu; ++u) {
      if (!active[u]) continue;
      compute_components(u);
      for (int rb = 0; rb < n_rb; ++rb) cqi_now[u][rb] = table.cqi_for_linear(comps[u].sinr(rb));
    }

    if (dynamic) {
      for (int u = 0; u < nu; ++u) {
        if (ues[u].network != Network::outdoor) continue;
        const auto beta = solve_beta(comps[u], cfg.scheme.psi_percent, beta_mapper);
        BetaReport r{ues[u].id, ues[u].position, cfg.quantizer.apply(beta.beta_db), t};
        pending.push_back(perturb_location(r, cfg.location_error_m, ue_rng[u]));
      }
    }

    std::fill(last_rate.begin(), last_rate.end(), 0.0);
    for (int b = 0; b < nb; ++b) {
      const auto& list = cell_ues[b];
      if (list.empty()) continue;
      RateMatrix rates(static_cast<int>(list.size()), n_rb);
      for (std::size_t k = 0; k < list.size(); ++k) {
        const int u = list[k];
        const double factor = cfg.mapper.technology_factor(ues[u].technology);
        for (int rb = 0; rb < n_rb; ++rb) {
          rates.at(static_cast<int>(k), rb) = cfg.mapper.rb_rate_for_cqi(cqi_prev[u][rb]) * factor;
        }
      }
      const auto owner = pf_schedule(rates, pf[b], cfg.pf_epsilon_bps);
      std::vector<double> served(list.size(), 0.0);
      for (int rb = 0; rb < n_rb; ++rb) {
        if (owner[rb] == kUnassigned) continue;
        const int u = list[owner[rb]];
        // the transmission uses the reported CQI; it only decodes up to what the channel supports now
        served[owner[rb]] += cfg.mapper.rb_rate_for_cqi(std::min(cqi_prev[u][rb], cqi_now[u][rb])) *
                             cfg.mapper.technology_factor(ues[u].technology);
      }
      pf[b] = update_average_rate(std::move(pf[b]), served);
      for (std::size_t k = 0; k < list.size(); ++k) last_rate[list[k]] = served[k];
    }

    if (t >= cfg.warmup_ms) {
      for (int u = 0; u < nu; ++u) rate_sum[u] += last_rate[u];
      power_sum += indoor_p.size() ? indoor_p.mean() : 0.0;
      ++stat_ticks;
      if (uses_rem(cfg.scheme.scheme)) {
        for (int u = 0; u < nu; ++u) {
          if (ues[u].network == Network::outdoor) rem.log_rate(ues[u].id, ues[u].position, last_rate[u]);
        }
      }
    }
    if (cfg.record_traces) {
      const auto w = static_cast<std::size_t>(t / cfg.trace_window_ms);
      for (int u = 0; u < nu; ++u) {
        window_rates[u][w] += last_rate[u] / cfg.trace_window_ms;
        if (!active[u]) continue;
        double all_rbs = 0.0;
        for (int rb = 0; rb < n_rb; ++rb) all_rbs += cfg.mapper.rb_rate_for_cqi(cqi_now[u][rb]);
        window_achievable[u][w] += all_rbs * cfg.mapper.technology_factor(ues[u].technology) / cfg.trace_window_ms;
      }
    }

    if (dynamic && rem.due_for_update(t)) {
      const auto snap = rem.snapshot(t);
      const auto out = dynamic_update(snap, indoor_p, model, indoor_bs, dyn);
      ++updates;
      if (out.kept_previous && !snap.empty()) ++fallbacks;
      indoor_p = out.allocation.p_tx;
      apply_indoor_powers();
      if (cfg.record_traces) {
        update_ticks.push_back(t);
        double mb = std::numeric_limits<double>::infinity();
        for (const auto& r : snap) mb = std::min(mb, r.beta_db);
        update_min_beta.push_back(mb);
        update_powers.emplace_back(indoor_p.data(), indoor_p.data() + indoor_p.size());
      }
    }

    std::swap(cqi_prev, cqi_now);
    ++t;
  }

  IterationResult result() const {
    IterationResult r;
    r.seed = seed;
    for (int u = 0; u < nu; ++u) {
      UeResult ue;
      ue.id = ues[u].id;
      ue.network = ues[u].network;
      ue.technology = ues[u].technology;
      ue.serving_bs_id = bs[serving[u]].id;
      ue.mean_rate_bps = stat_ticks > 0 ? rate_sum[u] / static_cast<double>(stat_ticks) : 0.0;
      r.ues.push_back(ue);
    }
    r.mean_indoor_power_mw = stat_ticks > 0 ? power_sum / static_cast<double>(stat_ticks) : 0.0;
    r.controller_updates = updates;
    r.solver_fallbacks = fallbacks;
    if (cfg.record_traces) {
      r.trace_window_ms = cfg.trace_window_ms;
      r.window_rates_bps = window_rates;
      r.window_achievable_bps = window_achievable;
      r.update_ticks = update_ticks;
      r.update_min_beta_db = update_min_beta;
      r.update_powers_mw = update_powers;
    }
    return r;
  }
};

Simulation::Simulation(const SimulationConfig& config, std::uint64_t seed, const Eigen::VectorXd& p0)
    : impl_(std::make_unique<Impl>(config, seed, p0)) {}
Simulation::~Simulation() = default;

void Simulation::step() { impl_->step(); }
void Simulation::run() {
  while (impl_->t < impl_->cfg.horizon_ms) impl_->step();
}
int Simulation::now_ms() const { return impl_->t; }
const std::vector<UeConfig>& Simulation::ues() const { return impl_->ues; }
const std::vector<BsConfig>& Simulation::base_stations() const { return impl_->bs; }
const std::vector<int>& Simulation::serving() const { return impl_->serving; }
const SinrVector& Simulation::components(std::size_t u) const { return impl_->comps.at(u); }
std::span<const double> Simulation::rb_power_mw(std::size_t b) const { return impl_->rb_power.at(b); }
double Simulation::total_power_mw(std::size_t b) const { return impl_->bs_total.at(b); }
const Eigen::VectorXd& Simulation::indoor_power_mw() const { return impl_->indoor_p; }
const std::vector<double>& Simulation::last_rates_bps() const { return impl_->last_rate; }
const RemStore& Simulation::rem() const { return impl_->rem; }
IterationResult Simulation::result() const { return impl_->result(); }

std::uint64_t iteration_seed(std::uint64_t master, int iteration) {
  Rng rng = make_rng(master, {0x4954, static_cast<std::uint32_t>(iteration)});
  return rng();
}

IterationResult run_iteration(const SimulationConfig& config, int iteration, const Eigen::VectorXd& p0) {
  Simulation sim(config, iteration_seed(config.seed, iteration), p0);
  sim.run();
  return sim.result();
}

namespace {

NetworkSummary summarize_network(const std::vector<IterationResult>& its, Network net) {
  NetworkSummary s;
  std::vector<double> means;
  std::vector<double> p10s;
  for (const auto& it : its) {
    std::vector<double> rates;
    for (const auto& ue : it.ues) {
      if (ue.network == net) rates.push_back(ue.mean_rate_bps);
    }
    if (rates.empty()) continue;
    double sum = 0.0;
    for (double r : rates) sum += r;
    means.push_back(sum / static_cast<double>(rates.size()));
    p10s.push_back(percentile_nearest_rank(rates, 10.0));
    s.pooled_rates.insert(s.pooled_rates.end(), rates.begin(), rates.end());
  }
  s.mean_rate = mean_ci95(means);
  s.p10_by_iteration = mean_ci95(p10s);
  if (!s.pooled_rates.empty()) s.p10_rate = percentile_nearest_rank(s.pooled_rates, 10.0);
  return s;
}

}  // namespace

MetricsSummary summarize(std::vector<IterationResult> its, std::uint64_t seed, SchemeKind scheme) {
  MetricsSummary m;
  m.seed = seed;
  m.scheme = scheme;
  m.outdoor = summarize_network(its, Network::outdoor);
  m.indoor = summarize_network(its, Network::indoor);
  std::vector<double> power;
  for (const auto& it : its) {
    power.push_back(it.mean_indoor_power_mw);
    m.solver_fallbacks += it.solver_fallbacks;
  }
  m.indoor_power_mw = mean_ci95(power);
  m.iterations = std::move(its);
  return m;
}

MetricsSummary run_campaign(const SimulationConfig& config) {
  config.validate();
  const PathlossModel model = config.pathloss_model();
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(config.scenario.indoor_bs.size()));
  if (config.indoor_enabled && !config.force_indoor_zero) p0 = static_scheme_powers(config.scenario, model, config.scheme);

  std::vector<IterationResult> results(static_cast<std::size_t>(config.iterations));
  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.iterations);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < config.iterations; i = next++) {
      try {
        results[i] = run_iteration(config, i, p0);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  auto summary = summarize(std::move(results), config.seed, config.scheme.scheme);
  summary.initial_indoor_power_mw = p0;
  return summary;
}

CampaignOutcome outcome_of(const MetricsSummary& s) {
  CampaignOutcome o;
  o.outdoor_p10_bps = s.outdoor.p10_rate;
  o.outdoor_p10_ci_bps = s.outdoor.p10_by_iteration.half_width;
  o.mean_indoor_power_mw = s.indoor_power_mw.mean;
  o.mean_indoor_rate_bps = s.indoor.mean_rate.mean;
  return o;
}

CampaignRunner margin_runner(const SimulationConfig& base) {
  const auto kind = base.scheme.scheme;
  if (kind != SchemeKind::semi_static && kind != SchemeKind::semi_static_area) {
    throw ConfigError("margin sweeps need scheme semi_static or semi_static_area, got " + to_string(kind));
  }
  return [base, kind](std::optional<double> gamma_db) {
    SimulationConfig c = base;
    if (!gamma_db) {
      c.indoor_enabled = false;
      c.scheme.scheme = SchemeKind::off;
    } else if (kind == SchemeKind::semi_static) {
      c.scheme.belt_gamma_db = *gamma_db;
    } else {
      c.scheme.area_gamma_db = *gamma_db;
    }
    return outcome_of(run_campaign(c));
  };
}

MovingUeSeries moving_ue_scenario(SimulationConfig config, double speed_kmh, int duration_ms, int window_ms) {
  if (!(speed_kmh >= 0.0)) throw ConfigError("speed must be non-negative");
  if (duration_ms < window_ms || window_ms < 1) throw ConfigError("duration must cover at least one window");
  config.fading = FadingMode::awgn;
  config.users.outdoor = 0;
  config.horizon_ms = duration_ms;
  config.warmup_ms = 0;
  config.record_traces = true;
  config.trace_window_ms = window_ms;
  const double v = speed_kmh / 3.6;
  const double length = v * duration_ms / 1000.0;
  const Rect box = config.scenario.building.bounding_box();
  const double cx = 0.5 * (box.x_min + box.x_max);
  const double y = config.scenario.outdoor_region.y_max - 1.0;
  config.moving_ue = MovingUe{{cx - 0.5 * length, y}, {v, 0.0}};
  const auto summary = run_campaign(config);

  MovingUeSeries s;
  s.window_ms = window_ms;
  const int windows = duration_ms / window_ms;
  s.time_ms.resize(windows);
  s.position_x_m.resize(windows);
  s.outdoor_rate_bps.assign(windows, 0.0);
  s.indoor_rate_bps.assign(windows, 0.0);
  for (int w = 0; w < windows; ++w) {
    s.time_ms[w] = w * window_ms;
    s.position_x_m[w] = config.moving_ue->start.x + v * w * window_ms / 1000.0;
  }
  for (const auto& it : summary.iterations) {
    const std::size_t moving = it.ues.size() - 1;
    int n_in = 0;
    for (const auto& ue : it.ues) n_in += ue.network == Network::indoor ? 1 : 0;
    for (int w = 0; w < windows; ++w) {
      s.outdoor_rate_bps[w] += it.window_rates_bps[moving][w] / config.iterations;
      if (n_in == 0) continue;
      double acc = 0.0;
      for (std::size_t u = 0; u < it.ues.size(); ++u) {
        if (it.ues[u].network == Network::indoor) acc += it.window_rates_bps[u][w];
      }
      s.indoor_rate_bps[w] += acc / n_in / config.iterations;
    }
  }
  return s;
}

}  // namespace remsim

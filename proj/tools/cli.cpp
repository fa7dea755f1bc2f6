#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "remsim/config.hpp"
#include "remsim/error.hpp"
#include "remsim/optim.hpp"
#include "remsim/report.hpp"
#include "remsim/simcore.hpp"

namespace remsim::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-c,--config", c.config_path, "JSON config (built-in defaults when omitted)");
  sub->add_option("-O,--override", c.overrides, "dotted.key=value, applied after the file")->allow_extra_args(false);
  sub->add_option("-o,--out", c.out_dir, "output directory")->capture_default_str();
}

SimulationConfig load(const Common& c) {
  if (c.config_path.empty()) return parse_config("{\"schema_version\": 1}", "<defaults>", c.overrides);
  return load_config(c.config_path, c.overrides);
}

fs::path prepare_out(const Common& c) {
  const fs::path dir = c.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + c.out_dir + "'");
  return dir;
}

std::ofstream open_file(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void print_warnings(const SimulationConfig& cfg, std::ostream& err) {
  for (const auto& w : cfg.scheme.warnings()) err << "warning: " << w << "\n";
}

void print_network(std::ostream& out, const char* name, const NetworkSummary& n) {
  out << "  " << name << ": mean " << n.mean_rate.mean / 1e6 << " +- " << n.mean_rate.half_width / 1e6
      << " Mbit/s, p10 " << n.p10_rate / 1e6 << " Mbit/s\n";
}

int cmd_run(const Common& c, bool rem_reports, std::ostream& out, std::ostream& err) {
  const SimulationConfig cfg = load(c);
  print_warnings(cfg, err);
  const fs::path dir = prepare_out(c);
  const MetricsSummary s = run_campaign(cfg);

  auto f = open_file(dir / "summary.json");
  write_summary_json(f, cfg, s);
  f = open_file(dir / "ue_rates.csv");
  write_ue_csv(f, cfg, s);
  f = open_file(dir / "cdf_outdoor.csv");
  write_cdf_csv(f, cfg, s.outdoor.pooled_rates);
  f = open_file(dir / "cdf_indoor.csv");
  write_cdf_csv(f, cfg, s.indoor.pooled_rates);
  if (rem_reports) {
    // replays iteration 0 to keep its report log
    Simulation sim(cfg, iteration_seed(cfg.seed, 0));
    sim.run();
    f = open_file(dir / "rem_reports.csv");
    write_csv_header(f, cfg);
    sim.rem().write_report_csv(f);
  }

  out << "scheme " << to_string(s.scheme) << ", " << s.iterations.size() << " iterations, seed " << s.seed
      << ", config " << hash_hex(config_hash(cfg)) << "\n";
  print_network(out, "outdoor", s.outdoor);
  print_network(out, "indoor", s.indoor);
  out << "  mean indoor BS power " << s.indoor_power_mw.mean << " mW\n";
  if (s.solver_fallbacks > 0) out << "  solver fallbacks " << s.solver_fallbacks << "\n";
  return 0;
}

int cmd_sweep(const Common& c, std::vector<double> gammas, double target, std::ostream& out, std::ostream& err) {
  const SimulationConfig cfg = load(c);
  print_warnings(cfg, err);
  if (!(target > 0.0 && target < 1.0)) throw ConfigError("--target must be in (0, 1)");
  const fs::path dir = prepare_out(c);
  const auto r = calibrate_margin(margin_runner(cfg), gammas, target);
  auto f = open_file(dir / "sweep.csv");
  write_sweep_csv(f, cfg, r);
  out << "baseline outdoor p10 " << r.baseline.outdoor_p10_bps / 1e6 << " Mbit/s\n";
  for (const auto& row : r.sweep) {
    out << "  gamma " << row.gamma_db << " dB: degradation " << 100.0 * row.degradation << " %, indoor power "
        << row.outcome.mean_indoor_power_mw << " mW\n";
  }
  out << "selected gamma " << r.gamma_db << " dB" << (r.target_met ? "" : " (target not met)") << "\n";
  if (!r.target_met) err << "warning: no margin met the degradation target; strictest candidate returned\n";
  return 0;
}

int cmd_compare(const Common& c, const std::vector<std::string>& schemes, std::ostream& out, std::ostream& err) {
  const SimulationConfig base = load(c);
  print_warnings(base, err);
  std::vector<SchemeKind> kinds;
  for (const auto& s : schemes) kinds.push_back(scheme_from_string(s));
  if (kinds.empty()) throw ConfigError("--schemes is empty");
  const fs::path dir = prepare_out(c);

  std::vector<MetricsSummary> all;
  for (const auto kind : kinds) {
    SimulationConfig cfg = base;
    cfg.scheme.scheme = kind;
    all.push_back(run_campaign(cfg));
    const auto name = to_string(kind);
    auto f = open_file(dir / ("cdf_" + name + "_outdoor.csv"));
    write_cdf_csv(f, cfg, all.back().outdoor.pooled_rates);
    f = open_file(dir / ("cdf_" + name + "_indoor.csv"));
    write_cdf_csv(f, cfg, all.back().indoor.pooled_rates);
    out << name << "\n";
    print_network(out, "outdoor", all.back().outdoor);
    print_network(out, "indoor", all.back().indoor);
    out << "  mean indoor BS power " << all.back().indoor_power_mw.mean << " mW\n";
  }
  auto f = open_file(dir / "compare.csv");
  write_compare_csv(f, base, all);
  return 0;
}

int cmd_oracle(const std::string& problem_path, const std::string& goal, int grid, std::ostream& out) {
  PowerProblem pr = read_problem(problem_path);
  if (!goal.empty()) pr.goal = goal_from_string(goal);
  const auto solved = solve(pr);
  const auto oracle = brute_force_power_oracle(pr, grid);
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  const double denom = std::max(std::abs(oracle.objective_value), 1e-12);
  json j = {{"goal", to_string(pr.goal)},
            {"grid", grid},
            {"solver", {{"p_tx_mw", vec(solved.p_tx)}, {"objective", solved.objective_value},
                        {"feasible", is_feasible(pr, solved.p_tx)}}},
            {"oracle", {{"p_tx_mw", vec(oracle.p_tx)}, {"objective", oracle.objective_value}}},
            {"relative_gap", (solved.objective_value - oracle.objective_value) / denom}};
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_moving(const Common& c, double speed, int duration, int window, std::ostream& out, std::ostream& err) {
  const SimulationConfig cfg = load(c);
  print_warnings(cfg, err);
  const fs::path dir = prepare_out(c);
  const auto s = moving_ue_scenario(cfg, speed, duration, window);
  auto f = open_file(dir / "moving.csv");
  write_moving_csv(f, cfg, s);
  out << s.time_ms.size() << " windows of " << s.window_ms << " ms over " << cfg.iterations << " iterations\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"remsim: indoor/outdoor spectrum sharing simulator"};
  app.require_subcommand(1);

  Common common;
  bool rem_reports = false;
  std::vector<double> gammas{-50, -40, -30, -20, -10, -3, 0};
  double target = 0.10;
  std::vector<std::string> schemes{"off", "modified_lsa", "cbrs", "semi_static", "semi_static_area", "dynamic"};
  std::string problem_path;
  std::string goal;
  int grid = 200;
  double speed = 50.0;
  int duration = 6000;
  int window = 200;

  auto* run_cmd = app.add_subcommand("run", "one Monte Carlo campaign");
  add_common(run_cmd, common);
  run_cmd->add_flag("--rem-reports", rem_reports, "also dump the REM report log of iteration 0");

  auto* sweep_cmd = app.add_subcommand("sweep", "margin calibration sweep (semi-static schemes)");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--gammas", gammas, "ascending margins in dB")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--target", target, "allowed outdoor p10 degradation")->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "several schemes on identical seeds");
  add_common(compare_cmd, common);
  compare_cmd->add_option("--schemes", schemes, "comma separated")->delimiter(',')->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "solve a dumped power problem and check it by grid search");
  oracle_cmd->add_option("problem", problem_path, "problem file")->required();
  oracle_cmd->add_option("--goal", goal, "override the goal stored in the file");
  oracle_cmd->add_option("--grid", grid, "grid points per dimension")->capture_default_str();

  auto* moving_cmd = app.add_subcommand("moving", "one outdoor UE walking past the building");
  add_common(moving_cmd, common);
  moving_cmd->add_option("--speed", speed, "km/h")->capture_default_str();
  moving_cmd->add_option("--duration", duration, "ms")->capture_default_str();
  moving_cmd->add_option("--window", window, "averaging window, ms")->capture_default_str();

  auto* show_cmd = app.add_subcommand("show-config", "print the effective config and its hash");
  add_common(show_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(common, rem_reports, out, err);
    if (*sweep_cmd) return cmd_sweep(common, gammas, target, out, err);
    if (*compare_cmd) return cmd_compare(common, schemes, out, err);
    if (*oracle_cmd) return cmd_oracle(problem_path, goal, grid, out);
    if (*moving_cmd) return cmd_moving(common, speed, duration, window, out, err);
    if (*show_cmd) {
      const auto cfg = load(common);
      out << config_to_json(cfg, 2) << "\n# config_hash=" << hash_hex(config_hash(cfg)) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace remsim::cli

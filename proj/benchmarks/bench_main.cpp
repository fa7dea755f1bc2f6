#include <benchmark/benchmark.h>

#include <random>

#include "random_problems.hpp"
#include "remsim/controllers.hpp"
#include "remsim/optim.hpp"
#include "remsim/simcore.hpp"

using namespace remsim;

namespace {

void solver(benchmark::State& state, Goal goal) {
  std::mt19937_64 rng(7);
  std::vector<PowerProblem> set;
  for (int i = 0; i < 64; ++i) set.push_back(remsim::testing::random_problem(rng, goal));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(set[k++ % set.size()]).objective_value);
  }
}

void BM_SumPower(benchmark::State& s) { solver(s, Goal::sum_power); }
void BM_MaxMin(benchmark::State& s) { solver(s, Goal::max_min); }
void BM_LogSum(benchmark::State& s) { solver(s, Goal::log_sum); }

// dynamic-scheme sized problem: 5 indoor BSs, many victims
void BM_LogSumScenarioSize(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  PowerProblem pr;
  pr.goal = Goal::log_sum;
  pr.p_max = dbm_to_mw(21.0);
  const auto n = state.range(0);
  pr.w.resize(n, 5);
  for (Eigen::Index i = 0; i < pr.w.size(); ++i) pr.w.data()[i] = 1e-11 * std::pow(10.0, 3.0 * u(rng));
  pr.i_max = pr.w.rowwise().sum() * pr.p_max * 0.2;
  for (auto _ : state) benchmark::DoNotOptimize(solve(pr).objective_value);
}

void BM_SolveBeta(benchmark::State& state) {
  RateMapper m;
  m.mode = state.range(0) ? RateMode::shannon : RateMode::narrowband_cqi;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  SinrVector c(100);
  for (int rb = 0; rb < 100; ++rb) {
    c.signal[rb] = std::pow(10.0, 2.0 * u(rng));
    c.noise[rb] = 1.0;
    c.i_in[rb] = u(rng);
    c.i_out[rb] = std::pow(10.0, u(rng) - 0.5);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_beta(c, 90.0, m).beta_db);
}

void BM_SimulationStep(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.scheme.scheme = static_cast<SchemeKind>(state.range(0));
  Simulation sim(cfg, 1);
  for (auto _ : state) sim.step();
  state.SetLabel(to_string(cfg.scheme.scheme));
}

}  // namespace

BENCHMARK(BM_SumPower);
BENCHMARK(BM_MaxMin);
BENCHMARK(BM_LogSum);
BENCHMARK(BM_LogSumScenarioSize)->Arg(10)->Arg(50)->Arg(200);
BENCHMARK(BM_SolveBeta)->Arg(0)->Arg(1);
BENCHMARK(BM_SimulationStep)
    ->Arg(static_cast<int>(SchemeKind::modified_lsa))
    ->Arg(static_cast<int>(SchemeKind::dynamic))
    ->Iterations(2000);

BENCHMARK_MAIN();

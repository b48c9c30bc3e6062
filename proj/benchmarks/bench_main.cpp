#include <benchmark/benchmark.h>

#include <vector>

#include "toptwo/characteristic.hpp"
#include "toptwo/episode.hpp"
#include "toptwo/experiment.hpp"
#include "toptwo/numerics.hpp"

using namespace toptwo;

namespace {

Instance equal_means(std::size_t k) {
  std::vector<double> mu(k, -0.5);
  mu[0] = 0.0;
  return Instance(mu);
}

void BM_LambertWBar(benchmark::State& state) {
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w_bar(x));
    x = x < 1e6 ? x * 1.37 : 1.0;
  }
}
BENCHMARK(BM_LambertWBar);

void BM_CGaussian(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c_gaussian(x));
    x = x < 1e4 ? x * 1.21 : 0.5;
  }
}
BENCHMARK(BM_CGaussian);

void BM_SolveUnconstrained(benchmark::State& state) {
  const Instance inst = experiment_instance(InstanceFamily::random_k10(), 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_unconstrained(inst));
}
BENCHMARK(BM_SolveUnconstrained);

void BM_SolveConstrained(benchmark::State& state) {
  const Instance inst = experiment_instance(InstanceFamily::random_k10(), 7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_constrained(inst, 0.5));
}
BENCHMARK(BM_SolveConstrained);

void BM_EpisodeStep(benchmark::State& state, const char* rule_name) {
  const Instance inst = equal_means(static_cast<std::size_t>(state.range(0)));
  const RuleConfig rule = parse_rule(rule_name);
  EpisodeOptions opts;
  opts.seed = 3;
  Episode episode(inst, rule, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(episode.check_stop());
    episode.sample();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_EpisodeStep, ttucb, "ttucb")->Arg(10)->Arg(35);
BENCHMARK_CAPTURE(BM_EpisodeStep, ttucb_adaptive, "ttucb-adaptive")->Arg(10)->Arg(35);
BENCHMARK_CAPTURE(BM_EpisodeStep, t3c, "t3c")->Arg(10)->Arg(35);

}  // namespace

BENCHMARK_MAIN();

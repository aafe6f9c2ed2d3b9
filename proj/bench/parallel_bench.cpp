// Serial vs OpenMP kernels. Set OMP_NUM_THREADS to vary the team size.

#include <benchmark/benchmark.h>

#include "planlab/correspondence.hpp"
#include "planlab/domains.hpp"
#include "planlab/experiment.hpp"

namespace planlab {
namespace {

PlannerConfig config_for(PlannerKind k) {
  PlannerConfig c;
  c.planner = k;
  return c;
}

struct Trees {
  Problem problem = blocksworld_problem(random_blocksworld(4, 24));
  SearchTree ua = enumerate_tree(Generator(problem, config_for(PlannerKind::ua)), 4);
  SearchTree to = enumerate_tree(Generator(problem, config_for(PlannerKind::to)), 4);
  CorrespondenceMap map = build_L(ua, to);
};

const Trees& trees() {
  static const Trees t;
  return t;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_Unambiguity(benchmark::State& state) {
  const auto& t = trees();
  for (auto _ : state) benchmark::DoNotOptimize(verify_unambiguity(t.ua, exec_of(state)));
  state.counters["nodes"] = static_cast<double>(t.ua.size());
}
BENCHMARK(BM_Unambiguity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MappingLemma(benchmark::State& state) {
  const auto& t = trees();
  Generator gen(t.problem, config_for(PlannerKind::to));
  for (auto _ : state) benchmark::DoNotOptimize(verify_mapping_lemma(gen, t.ua, t.to, t.map, exec_of(state)));
  state.counters["pairs"] = static_cast<double>(t.map.pair_count());
}
BENCHMARK(BM_MappingLemma)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Experiment(benchmark::State& state) {
  std::vector<ExperimentProblem> problems;
  for (const auto& e : generate_suite(SuiteSpec{})) {
    if (e.length_class <= 3) problems.push_back({e.problem.name(), e.length_class, e.problem});
  }
  ExperimentConfig cfg;
  cfg.trials = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg, problems, exec_of(state)));
}
BENCHMARK(BM_Experiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace planlab

BENCHMARK_MAIN();

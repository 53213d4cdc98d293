#include <benchmark/benchmark.h>

#include "jobshop/move_eval.hpp"
#include "jobshop/neighborhood.hpp"
#include "jobshop/tabu_search.hpp"

namespace {

using namespace jobshop;

Instance load(const char* name) {
  const std::string dir = JOBSHOP_DATA_DIR;
  const std::string file = name;
  return load_instance(dir + "/instances/" + file,
                       file.ends_with(".tai") ? InstanceFormat::Taillard
                                              : InstanceFormat::OrLib);
}

// A random active schedule, fixed per instance.
struct State {
  explicit State(const char* name) : instance(load(name)) {
    Rng rng(1);
    solution = initial_solution(instance, rng);
    data = evaluate(instance, solution);
  }
  Instance instance;
  Solution solution;
  ScheduleData data;
};

const char* const kNames[] = {"ft10.txt", "la40.txt", "ta31.tai", "swv15.txt"};

void BM_Evaluate(benchmark::State& state) {
  const State s(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s.instance, s.solution));
  state.SetLabel(s.instance.name());
}
BENCHMARK(BM_Evaluate)->DenseRange(0, 3);

void BM_Generate(benchmark::State& state) {
  const State s(kNames[state.range(0)]);
  const auto kind = static_cast<NeighborhoodKind>(state.range(1));
  std::size_t moves = 0;
  for (auto _ : state) {
    auto out = generate(kind, s.instance, s.solution, s.data);
    moves = out.size();
    benchmark::DoNotOptimize(out);
  }
  state.SetLabel(s.instance.name() + " " + std::string(to_string(kind)) + " " +
                 std::to_string(moves) + " moves");
}
BENCHMARK(BM_Generate)->ArgsProduct({{0, 1, 2, 3}, {0, 1, 2, 3}});

void BM_EstimateNeighborhood(benchmark::State& state) {
  const State s(kNames[state.range(0)]);
  const auto moves = generate(NeighborhoodKind::N8, s.instance, s.solution, s.data);
  for (auto _ : state) {
    Time best = 0;
    for (const Move& m : moves) {
      best = std::max(best, estimate(m, s.instance, s.data, s.solution).makespan);
    }
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(moves.size()));
  state.SetLabel(s.instance.name());
}
BENCHMARK(BM_EstimateNeighborhood)->DenseRange(0, 3);

void BM_SearchIterations(benchmark::State& state) {
  const Instance instance = load(kNames[state.range(0)]);
  SearchConfig config;
  config.max_iters = 2000;
  config.target_lb = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(instance, config));
  state.SetItemsProcessed(state.iterations() * config.max_iters);
  state.SetLabel(instance.name());
}
BENCHMARK(BM_SearchIterations)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

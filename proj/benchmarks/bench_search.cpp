#include <benchmark/benchmark.h>

#include "tomt/dataset.hpp"
#include "tomt/harness.hpp"
#include "tomt/search.hpp"

namespace {

// Noisy mock over synthetic chains; arg 0 is the hop count.
void search_bench(benchmark::State& state, tomt::SearchMode mode) {
  const auto q = tomt::synthetic_question(static_cast<int>(state.range(0)), 3, "bench");
  const tomt::SearchConfig config = tomt::SearchConfig::defaults(mode);
  std::uint64_t seed = 0;
  long steps = 0;
  for (auto _ : state) {
    tomt::MockGenerator mock(tomt::MockConfig{*q.gold_plan, 0.7, 0.5, tomt::MockConfig{}.corruptions, seed++});
    steps += tomt::solve(q.question, mock, *q.scene, config).steps_used;
  }
  state.counters["steps"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kAvgIterations);
}

void BM_SearchToT(benchmark::State& s) { search_bench(s, tomt::SearchMode::ToT); }
void BM_SearchToTOS(benchmark::State& s) { search_bench(s, tomt::SearchMode::ToTOS); }
void BM_SearchToTBlock(benchmark::State& s) { search_bench(s, tomt::SearchMode::ToTBlock); }
BENCHMARK(BM_SearchToT)->DenseRange(2, 10, 4);
BENCHMARK(BM_SearchToTOS)->DenseRange(2, 10, 4);
BENCHMARK(BM_SearchToTBlock)->DenseRange(2, 10, 4);

void BM_BenchFixtures(benchmark::State& state) {
  tomt::ExperimentConfig config;
  for (auto m : {tomt::SearchMode::OneStop, tomt::SearchMode::ToT, tomt::SearchMode::ToTOS, tomt::SearchMode::ToTBlock}) {
    config.configs.push_back(tomt::SearchConfig::defaults(m));
  }
  config.generator.p_step = 0.7;
  config.generator.p_full = 0.5;
  config.repeats = 1;
  config.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tomt::run_experiment(tomt::bundled_fixtures().test, config));
}
BENCHMARK(BM_BenchFixtures)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

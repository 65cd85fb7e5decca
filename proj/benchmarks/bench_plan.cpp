#include <benchmark/benchmark.h>

#include "tomt/dataset.hpp"
#include "tomt/evaluator.hpp"
#include "tomt/interpreter.hpp"
#include "tomt/plan_dsl.hpp"

namespace {

const tomt::QuestionRecord& longest_fixture() {
  static const tomt::QuestionRecord* best = [] {
    const tomt::QuestionRecord* out = nullptr;
    for (const auto& r : tomt::bundled_fixtures().library) {
      if (!out || r.hops > out->hops) out = &r;
    }
    return out;
  }();
  return *best;
}

void BM_ParsePlan(benchmark::State& state) {
  const std::string text = tomt::render_plan(*longest_fixture().gold_plan);
  for (auto _ : state) benchmark::DoNotOptimize(tomt::parse_plan(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParsePlan);

void BM_ExecutePlan(benchmark::State& state) {
  const auto& r = longest_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(tomt::run_plan(*r.gold_plan, *r.scene));
}
BENCHMARK(BM_ExecutePlan);

void BM_EvaluateCandidate(benchmark::State& state) {
  const auto& r = longest_fixture();
  for (auto _ : state) benchmark::DoNotOptimize(tomt::evaluate_candidate(*r.gold_plan, *r.scene));
}
BENCHMARK(BM_EvaluateCandidate);

void BM_LoadDataset(benchmark::State& state) {
  const std::string jsonl = tomt::dataset_to_jsonl(tomt::bundled_fixtures());
  for (auto _ : state) benchmark::DoNotOptimize(tomt::parse_dataset(jsonl));
}
BENCHMARK(BM_LoadDataset);

}  // namespace

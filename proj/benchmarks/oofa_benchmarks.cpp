#include <random>

#include <benchmark/benchmark.h>

#include "oofa/criteria.hpp"
#include "oofa/design_search.hpp"
#include "oofa/ols.hpp"

using namespace oofa;

namespace {

const ModelSpec& spec_for(int index) {
  static const ModelSpec specs[] = {ModelSpec(Family::Pwo), ModelSpec(Family::ComponentPosition),
                                    ModelSpec(Family::ResponseSurface2), ModelSpec(Family::NearestNeighbour)};
  return specs[index];
}

void BM_FullFactorialMatrix(benchmark::State& state) {
  const auto& spec = spec_for(static_cast<int>(state.range(0)));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(full_factorial_matrix(spec, m));
  state.SetLabel(spec.name());
}
BENCHMARK(BM_FullFactorialMatrix)->ArgsProduct({{0, 1, 2, 3}, {4, 6}})->Unit(benchmark::kMicrosecond);

void BM_OlsFit(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Design design = random_design(m, static_cast<int>(state.range(1)), 1);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> noise;
  std::vector<double> y(design.size());
  for (auto& v : y) v = noise(rng);
  const Dataset data{design, y};
  for (auto _ : state) benchmark::DoNotOptimize(ols_fit(ModelSpec(Family::Pwo), data));
}
BENCHMARK(BM_OlsFit)->Args({4, 24})->Args({5, 40})->Args({6, 120})->Unit(benchmark::kMicrosecond);

void BM_ApvEvaluation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ModelSpec spec(Family::Pwo);
  const CriterionEvaluator eval(spec, CriterionSpec{}, m);
  const auto design = random_design(m, 3 * parameter_count(spec, m), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eval.evaluate(design.runs));
}
BENCHMARK(BM_ApvEvaluation)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_ExchangeSearch(benchmark::State& state) {
  SearchConfig config;
  config.m = 4;
  config.runs = 12;
  config.restarts = static_cast<int>(state.range(0));
  config.seed = 4;
  config.objective = CompoundSpec::equal_weights({ModelSpec(Family::Pwo), ModelSpec(Family::ResponseSurface2)},
                                                 CriterionSpec{CriterionKind::Apv});
  for (auto _ : state) benchmark::DoNotOptimize(exchange_search(config));
}
BENCHMARK(BM_ExchangeSearch)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

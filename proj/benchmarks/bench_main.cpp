#include <random>

#include <benchmark/benchmark.h>

#include "flatfiber/catalog.hpp"
#include "flatfiber/classify.hpp"
#include "flatfiber/normal_form.hpp"

using namespace flatfiber;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load(FLATFIBER_BENCH_CATALOG);
  return c;
}

ZMat random_matrix(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-20, 20);
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

void BM_Snf(benchmark::State& state) {
  std::mt19937 rng(11);
  ZMat m = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_CatalogLoad(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Catalog::load(FLATFIBER_BENCH_CATALOG));
}
BENCHMARK(BM_CatalogLoad)->Unit(benchmark::kMillisecond);

void BM_PairSearch(benchmark::State& state) {
  const SpaceGroup& g = catalog().group("p1");
  auto a = FibrationSplit::analyze(g, SubgroupHandle(g, {AffineMap::translation({1, 0})}));
  auto b = FibrationSplit::analyze(g, SubgroupHandle(g, {AffineMap::translation({1, 1})}));
  for (auto _ : state) benchmark::DoNotOptimize(pair_isomorphism_search(a, b));
}
BENCHMARK(BM_PairSearch)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  ClassifyOptions options;
  options.bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify(catalog(), "pm_1d", "p1_1d", options));
}
BENCHMARK(BM_Classify)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

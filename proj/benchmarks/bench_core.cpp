#include <benchmark/benchmark.h>

#include <random>

#include "btcoh/arrangement.hpp"
#include "btcoh/building.hpp"
#include "btcoh/cech.hpp"
#include "btcoh/normal_forms.hpp"
#include "btcoh/orlik_solomon.hpp"

using namespace btcoh;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 21) - 10;
  for (auto _ : state) benchmark::DoNotOptimize(elementary_divisors(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32);

static void BM_BallComplex(benchmark::State& state) {
  const GlobalParams g{static_cast<int>(state.range(0)), state.range(1)};
  const int radius = static_cast<int>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(ball_complex(g, radius, kDefaultSizeCap, 1));
}
BENCHMARK(BM_BallComplex)->Args({1, 3, 4})->Args({2, 2, 2})->Unit(benchmark::kMillisecond);

static void BM_OrlikSolomonVertex(benchmark::State& state) {
  const GlobalParams g{2, 2};
  const auto h = enumerate_H(g, static_cast<int>(state.range(0)));
  const auto s = *normalize_simplex({standard_vertex(g)}, g.p);
  const auto ranks = ArrangementOrder::lexicographic().ranks(h);
  for (auto _ : state) {
    OrlikSolomonAlgebra alg(s, h, ranks);
    benchmark::DoNotOptimize(alg.a_rank(2));
  }
}
BENCHMARK(BM_OrlikSolomonVertex)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CechUnitBall(benchmark::State& state) {
  const GlobalParams g{2, 2};
  const auto b = ball_complex(g, 1);
  const OrlikSolomonFamily family(b, enumerate_H(g, 2), ArrangementOrder::lexicographic(), 1);
  const OrlikSolomonSystem system(family, static_cast<std::size_t>(state.range(0)));
  const auto y = SimplicialComplex::from_ball(b);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology(build_cech(y, system, RingDescriptor::integers(), 1)));
}
BENCHMARK(BM_CechUnitBall)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

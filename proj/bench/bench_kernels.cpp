// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "toricdyn/dynamics/corpus.hpp"
#include "toricdyn/dynamics/monomial_map.hpp"
#include "toricdyn/lattice/minors.hpp"
#include "toricdyn/weights/displacement.hpp"

using namespace toricdyn;

namespace {

lattice::IntegerMatrix sample_matrix(int n) { return dynamics::random_map(7, n, 5).psi(); }

/// Pulled-back c_1 and c_{n-1} on the Cremona refinement of P^n, with a generic vector.
struct CupFixture {
  weights::MinkowskiWeight a, b;
  weights::MeetFilter filter;
  LatticeVector v;
};

CupFixture cup_fixture(int n) {
  lattice::IntegerMatrix minus(n, n);
  for (int i = 0; i < n; ++i) minus(i, i) = -1;
  const dynamics::MonomialMap map(minus);
  auto target = std::make_shared<const fans::Fan>(fans::fan_pn(n));
  dynamics::PipelineContext context(map, target);
  auto pull = [&](int k) {
    return weights::pullback_along_morphism(minus, context.refined(), weights::standard_weight_basis(target, k).elements.front().weight);
  };
  return {pull(1), pull(n - 1), weights::MeetFilter(*context.refined()), context.generic().v};
}

void BM_compound_parallel(benchmark::State& state) {
  const auto a = sample_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lattice::compound_matrix(a, static_cast<int>(state.range(0)) / 2));
}

void BM_compound_reference(benchmark::State& state) {
  const auto a = sample_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lattice::reference::compound_matrix(a, static_cast<int>(state.range(0)) / 2));
}

void BM_cup_parallel_filtered(benchmark::State& state) {
  const auto f = cup_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weights::cup_at_zero(f.a, f.b, f.v, f.filter));
}

void BM_cup_parallel(benchmark::State& state) {
  const auto f = cup_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weights::cup_at_zero(f.a, f.b, f.v));
}

void BM_cup_reference(benchmark::State& state) {
  const auto f = cup_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weights::reference::cup_at_zero(f.a, f.b, f.v));
}

}  // namespace

BENCHMARK(BM_compound_parallel)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compound_reference)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cup_parallel_filtered)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cup_parallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cup_reference)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include <array>
#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "quatcalc/discretize.hpp"
#include "quatcalc/irreducibility.hpp"
#include "quatcalc/qmatrix.hpp"
#include "quatcalc/random.hpp"
#include "quatcalc/scalculus.hpp"
#include "quatcalc/spectrum.hpp"

namespace {

using namespace quatcalc;

QMatrix random_square(std::size_t n, std::uint64_t seed = 1) {
  Rng rng(seed);
  return random_qmatrix(rng, n, n);
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const QMatrix a = random_square(n, 1), b = random_square(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Multiply)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Chi(benchmark::State& state) {
  const QMatrix a = random_square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chi(a));
}
BENCHMARK(BM_Chi)->RangeMultiplier(4)->Range(8, 512);

void BM_OpNorm(benchmark::State& state) {
  const QMatrix a = random_square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(a));
}
BENCHMARK(BM_OpNorm)->RangeMultiplier(2)->Range(16, 512)->Unit(benchmark::kMillisecond);

void BM_SphericalSpectrum(benchmark::State& state) {
  const QMatrix a = random_square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spherical_spectrum(a));
}
BENCHMARK(BM_SphericalSpectrum)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

void BM_RieszDecompose(benchmark::State& state) {
  const auto per = static_cast<std::size_t>(state.range(0));
  const std::array<Sphere, 2> spheres{Sphere{-1.0, 0.5}, Sphere{2.0, 0.25}};
  const std::array<std::size_t, 2> mult{per, per};
  Rng rng(3);
  const QMatrix t = random_normal(rng, spheres, mult);
  const std::vector<Sphere> sigma{spheres[0]}, tau{spheres[1]};
  for (auto _ : state) benchmark::DoNotOptimize(riesz_decompose(t, sigma, tau, kDefaultNodes));
}
BENCHMARK(BM_RieszDecompose)->Arg(1)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_StrongIrreducibility(benchmark::State& state) {
  const QMatrix a = random_square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_strongly_irreducible(a));
}
BENCHMARK(BM_StrongIrreducibility)->DenseRange(2, 6, 2)->Unit(benchmark::kMicrosecond);

void BM_VolterraNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridOperator k = volterra_op(n);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(k.t));
}
BENCHMARK(BM_VolterraNorm)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

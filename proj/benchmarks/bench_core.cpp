#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "sq3/constants.hpp"
#include "sq3/convolution.hpp"
#include "sq3/expsum.hpp"
#include "sq3/repcount.hpp"
#include "sq3/singular.hpp"
#include "sq3/verify.hpp"

namespace {

void BM_R3Fold(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::build_r3_fold(x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_R3Fold)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_R3Convolution(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::build_rk(x, 3));
}
BENCHMARK(BM_R3Convolution)->RangeMultiplier(10)->Range(10'000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_ConvolveExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint64_t> a(n), b(n);
  std::iota(a.begin(), a.end(), 1);
  std::iota(b.begin(), b.end(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(sq3::convolve_exact(a, b, 2 * n));
}
BENCHMARK(BM_ConvolveExact)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Unit(benchmark::kMicrosecond);

void BM_GaussTable(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::GaussTable(q));
}
BENCHMARK(BM_GaussTable)->Arg(97)->Arg(1024)->Arg(3600)->Arg(9973);

void BM_GaussSumSingle(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::gauss_sum(q, 3));
}
BENCHMARK(BM_GaussSumSingle)->Arg(512)->Arg(65536);

void BM_WeylSum(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::weyl_sum(0.318309886, n));
}
BENCHMARK(BM_WeylSum)->Arg(1000)->Arg(100000);

void BM_VSum(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sq3::v_sum(1.25e-4, 1'000'000));
}
BENCHMARK(BM_VSum)->Unit(benchmark::kMillisecond);

void BM_ResidueCountSeries(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const std::vector<std::uint64_t> ns{1, 2, 3, 5, 6, 7, 15};
  for (auto _ : state) {
    const sq3::ResidueCountSeries series(q, ns);
    benchmark::DoNotOptimize(series.truncation(1, q).value);
  }
}
BENCHMARK(BM_ResidueCountSeries)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DirectSeries(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sq3::singular_series(1, q, sq3::SeriesMethod::direct).value);
}
BENCHMARK(BM_DirectSeries)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_IExactSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sq3::i_exact_series(2000, 2000));
}
BENCHMARK(BM_IExactSeries)->Unit(benchmark::kMillisecond);

void BM_ZetaDouble(benchmark::State& state) {
  double s = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(sq3::zeta_real(s));
}
BENCHMARK(BM_ZetaDouble);

void BM_ZetaExtended(benchmark::State& state) {
  const sq3::Extended s(3);
  for (auto _ : state) benchmark::DoNotOptimize(sq3::zeta_real<sq3::Extended>(s));
}
BENCHMARK(BM_ZetaExtended)->Unit(benchmark::kMicrosecond);

void BM_B1Euler(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sq3::b1_euler(1'000'000));
}
BENCHMARK(BM_B1Euler)->Unit(benchmark::kMillisecond);

void BM_MeanSquareSeries(benchmark::State& state) {
  const auto table = sq3::build_r3_fold(1'000'000);
  const auto grid = sq3::geometric_grid(100, 1'000'000);
  for (auto _ : state) benchmark::DoNotOptimize(sq3::mean_square_series(table, grid));
}
BENCHMARK(BM_MeanSquareSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

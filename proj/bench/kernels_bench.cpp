// Serial reference kernels against their OpenMP versions.
// Run with --benchmark_filter=... ; thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "efbound/kernels.hpp"

using namespace efbound;

namespace {

RationalMatrix random_weights(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(-4, 4);
  RationalMatrix w(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) w(i, j) = d(rng);
  return w;
}

SubsetFunction random_function(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(0, 9), den(1, 5);
  SubsetFunction f{n, RationalVector(std::size_t{1} << n)};
  for (auto& v : f.values) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return f;
}

std::vector<PartitionT> partitions(const UdisjParams& params) {
  const int n = params.n();
  const Subset full = (Subset{1} << n) - 1;
  std::vector<PartitionT> out;
  for (int i = 0; i < n; ++i) {
    const Subset rest = full & ~(Subset{1} << i);
    for (Subset t1 : subsets_of_size(n, params.part_size(), rest)) out.push_back({t1, rest & ~t1, i});
  }
  return out;
}

void BM_psd_identity_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::psd_identity_serial(static_cast<int>(st.range(0))));
}
void BM_psd_identity_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::psd_identity_omp(static_cast<int>(st.range(0))));
}

void BM_max_over_cor_serial(benchmark::State& st) {
  const RationalMatrix w = random_weights(static_cast<int>(st.range(0)), 5);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::max_over_cor_serial(w));
}
void BM_max_over_cor_omp(benchmark::State& st) {
  const RationalMatrix w = random_weights(static_cast<int>(st.range(0)), 5);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::max_over_cor_omp(w));
}

void BM_partition_stats_serial(benchmark::State& st) {
  const UdisjParams params(static_cast<int>(st.range(0)));
  const auto f = random_function(params.n(), 1), g = random_function(params.n(), 2);
  const auto parts = partitions(params);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::partition_stats_serial(f, g, params, parts));
}
void BM_partition_stats_omp(benchmark::State& st) {
  const UdisjParams params(static_cast<int>(st.range(0)));
  const auto f = random_function(params.n(), 1), g = random_function(params.n(), 2);
  const auto parts = partitions(params);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::partition_stats_omp(f, g, params, parts));
}

struct ScanInput {
  kernels::ClassGrid grid;
  std::vector<Rectangle> rects;
};

ScanInput scan_input(int n, std::size_t count) {
  const UdisjParams params(n);
  const auto subsets = subsets_of_size(n, params.ell(), (Subset{1} << n) - 1);
  ScanInput in{kernels::class_grid(params, subsets), {}};
  std::mt19937_64 rng(3);
  const std::uint64_t mask = (std::uint64_t{1} << subsets.size()) - 1;
  for (std::size_t i = 0; i < count; ++i) in.rects.push_back({rng() & mask, rng() & mask});
  return in;
}

void BM_scan_serial(benchmark::State& st) {
  const auto in = scan_input(7, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::scan_rectangles_serial(in.grid, in.rects, Rational(1, 2)));
}
void BM_scan_omp(benchmark::State& st) {
  const auto in = scan_input(7, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::scan_rectangles_omp(in.grid, in.rects, Rational(1, 2)));
}

}  // namespace

BENCHMARK(BM_psd_identity_serial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_psd_identity_omp)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_max_over_cor_serial)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_max_over_cor_omp)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_partition_stats_serial)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_partition_stats_omp)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_scan_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_omp)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

// OpenMP kernels against their serial references.
#include "csl/freeprod.hpp"
#include "csl/markoff.hpp"

#include <benchmark/benchmark.h>

using namespace csl;

static void BM_search_integral_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(search_integral(BigInt(329), BigInt(st.range(0))));
}
static void BM_search_integral_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(search_integral_reference(329, st.range(0)));
}
BENCHMARK(BM_search_integral_omp)->Arg(60)->Arg(120);
BENCHMARK(BM_search_integral_serial)->Arg(60)->Arg(120);

static void BM_trace_image_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(trace_commutator_image(st.range(0)));
}
static void BM_trace_image_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(trace_commutator_image_reference(st.range(0)));
}
BENCHMARK(BM_trace_image_omp)->Arg(9)->Arg(16);
BENCHMARK(BM_trace_image_serial)->Arg(9)->Arg(16);

static void BM_commutator_test_omp(benchmark::State& st) {
  Mat2L Z{1, 1, 0, 1};
  for (auto _ : st) benchmark::DoNotOptimize(commutator_test_modq(Z, st.range(0)));
}
static void BM_commutator_test_serial(benchmark::State& st) {
  Mat2L Z{1, 1, 0, 1};
  for (auto _ : st) benchmark::DoNotOptimize(commutator_test_modq_reference(Z, st.range(0)));
}
BENCHMARK(BM_commutator_test_omp)->Arg(8)->Arg(16);
BENCHMARK(BM_commutator_test_serial)->Arg(8)->Arg(16);

BENCHMARK_MAIN();

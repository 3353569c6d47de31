#include "dppdesign/baselines.hpp"
#include "dppdesign/cb_tables.hpp"
#include "dppdesign/dpp.hpp"
#include "dppdesign/emulator.hpp"
#include "dppdesign/kernel.hpp"

#include <benchmark/benchmark.h>

using namespace dppdesign;

namespace {

KernelMatrix grid_kernel(Index m, double rho) {
  return build_kernel_matrix(CandidateSet::grid(m, 2), {KernelFamily::GaussianIso, rho, 0.0});
}

void BM_BuildKernel(benchmark::State &state) {
  const CandidateSet c = CandidateSet::grid(state.range(0), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_kernel_matrix(c, {}));
}
BENCHMARK(BM_BuildKernel)->Arg(10)->Arg(25)->Arg(40);

void BM_FullEigen(benchmark::State &state) {
  const KernelMatrix k = grid_kernel(state.range(0), 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(eigendecompose(k));
}
BENCHMARK(BM_FullEigen)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_LeadingEigen(benchmark::State &state) {
  const KernelMatrix k = grid_kernel(state.range(0), 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(leading_eigenpairs(k, 21));
}
BENCHMARK(BM_LeadingEigen)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_Emulate(benchmark::State &state) {
  const KernelMatrix k = grid_kernel(25, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(emulate_ids(k, state.range(0)));
}
BENCHMARK(BM_Emulate)->Arg(5)->Arg(21)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SampleFixedRank(benchmark::State &state) {
  const CandidateSet c = CandidateSet::grid(state.range(0), 2);
  const KernelMatrix k = build_kernel_matrix(c, {});
  Rng rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_fixed_rank_dpp(k, 21, c, rng));
}
BENCHMARK(BM_SampleFixedRank)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_ConditionalBernoulli(benchmark::State &state) {
  const KernelMatrix k = grid_kernel(25, 0.01);
  const EigenSystem e = eigendecompose(k);
  const std::vector<double> l(e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size());
  const CBTables t = build_cb_tables(l, state.range(0));
  Rng rng(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_conditional_bernoulli(t, rng));
}
BENCHMARK(BM_ConditionalBernoulli)->Arg(5)->Arg(21)->Arg(100);

void BM_Exchange(benchmark::State &state) {
  const CandidateSet c = CandidateSet::grid(50, 2);
  const KernelMatrix k = build_kernel_matrix(c, {KernelFamily::ExponentialL1, 0.45, 0.0});
  Rng rng(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(fedorov_exchange(k, 30, state.range(0), rng, c));
}
BENCHMARK(BM_Exchange)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "saddlescape/harness.hpp"
#include "saddlescape/ncfind.hpp"
#include "saddlescape/verify.hpp"

using namespace saddlescape;

static void BM_NcFindHighdim(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Landscape h = make_highdim(n, 1.0);
  NCParams p;
  p.script_T = 30;
  p.r = 0.1;
  p.ell = h.ncf_ell;
  std::uint64_t k = 0;
  for (auto _ : st) {
    RngStream rng(1, k++);
    benchmark::DoNotOptimize(nc_find(h.f(), h.saddles[0].point, p, rng));
  }
  st.SetItemsProcessed(st.iterations() * p.script_T);
}
BENCHMARK(BM_NcFindHighdim)->Arg(10)->Arg(100)->Arg(1000);

static void BM_DenseHessian(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Landscape h = make_highdim(n, 1.0);
  const Vec x = Vec::Constant(n, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(dense_hessian_eig(h.f(), x));
}
BENCHMARK(BM_DenseHessian)->Arg(10)->Arg(50)->Arg(200);

static void BM_TrialThroughput(benchmark::State& st, const char* alg, const char* fn) {
  ExperimentConfig c;
  c.algorithm = alg;
  c.landscape = fn;
  const ResolvedExperiment rx = resolve_experiment(c);
  int k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(run_trial(rx, k++));
}
BENCHMARK_CAPTURE(BM_TrialThroughput, nc_quartic, "nc", "quartic");
BENCHMARK_CAPTURE(BM_TrialThroughput, pgd_quartic, "pgd", "quartic");
BENCHMARK_CAPTURE(BM_TrialThroughput, ancgd_quartic, "ancgd", "quartic");
BENCHMARK_CAPTURE(BM_TrialThroughput, sgdnc_cubic, "sgd-nc", "cubic");
BENCHMARK_MAIN();

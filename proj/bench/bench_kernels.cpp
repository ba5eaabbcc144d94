#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cyclo/echo_kernel.hpp"
#include "cyclo/kernels.hpp"
#include "cyclo/reference.hpp"

using cplx = std::complex<double>;

namespace {

void series(std::size_t n, std::vector<cplx>& a, std::vector<cplx>& k) {
  a.resize(n);
  k.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 0.01 * i;
    a[i] = std::exp(cplx(-0.3 * t, 2.0 * t));
    k[i] = 0.5 * std::exp(cplx(-t, 1.3 * t));
  }
}

void BM_volterra_reference(benchmark::State& st) {
  std::vector<cplx> a, k;
  series(st.range(0), a, k);
  for (auto _ : st) benchmark::DoNotOptimize(cyclo::reference::volterra_solve(a, k, 0.01));
}

void BM_volterra_omp(benchmark::State& st) {
  std::vector<cplx> a, k;
  series(st.range(0), a, k);
  for (auto _ : st) benchmark::DoNotOptimize(cyclo::kernels::volterra_solve(a, k, 0.01));
}

void BM_laplace_reference(benchmark::State& st) {
  std::vector<cplx> a, k;
  series(st.range(0), a, k);
  std::vector<double> w(501);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -5.0 + 0.02 * i;
  for (auto _ : st) benchmark::DoNotOptimize(cyclo::reference::laplace_transform(k, 0.01, w, 0.01));
}

void BM_laplace_omp(benchmark::State& st) {
  std::vector<cplx> a, k;
  series(st.range(0), a, k);
  std::vector<double> w(501);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = -5.0 + 0.02 * i;
  for (auto _ : st) benchmark::DoNotOptimize(cyclo::kernels::laplace_transform(k, 0.01, w, 0.01));
}

void BM_echo_kernel_scan(benchmark::State& st) {
  double t = 0.0;
  for (auto _ : st) {
    t = t > 300 ? 1.0 : t + 7.3;
    benchmark::DoNotOptimize(cyclo::reference::echo_kernel(t, 0.37 * t, 0.1, 2.0, 400));
  }
}

void BM_echo_kernel_candidates(benchmark::State& st) {
  cyclo::EchoKernelParams p;
  double t = 0.0;
  for (auto _ : st) {
    t = t > 300 ? 1.0 : t + 7.3;
    benchmark::DoNotOptimize(cyclo::kernel_value(t, 0.37 * t, p));
  }
}

void BM_forward_moment(benchmark::State& st) {
  cyclo::EchoKernelParams p;
  for (auto _ : st) benchmark::DoNotOptimize(cyclo::forward_moment(double(st.range(0)), p));
}

}  // namespace

BENCHMARK(BM_volterra_reference)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_volterra_omp)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_laplace_reference)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_laplace_omp)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_echo_kernel_scan)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_echo_kernel_candidates)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_forward_moment)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

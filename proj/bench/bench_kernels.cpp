// Serial reference vs OpenMP for the floating kernels. Results must agree bit for bit;
// the benchmark aborts if they don't.
#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "toric/arakelov/arakelov.hpp"
#include "toric/io/examples.hpp"
#include "toric/kernels/kernels.hpp"
#include "toric/numerics/cubature.hpp"

using namespace toric;

namespace {

ExecPolicy policy_of(const benchmark::State& s) { return s.range(0) ? ExecPolicy::parallel : ExecPolicy::serial; }

std::vector<double> grid(std::size_t side) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      pts.push_back(double(i) / double(side));
      pts.push_back(double(j) / double(side));
    }
  return pts;
}

double smooth(const double* x) { return std::exp(-x[0] * x[1]) * std::log1p(x[0] + x[1]); }

void BM_lattice_sum(benchmark::State& state) {
  auto pts = grid(1000);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::lattice_sum(smooth, 2, pts, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * long(pts.size() / 2));
}

void BM_cubature_roof(benchmark::State& state) {
  auto d = examples::fubini_study({2, 3, 4});
  auto r = global_roof(d);
  std::vector<QVec> simplex{{0, 0}, {1, 0}, {0, 1}};
  CubatureOptions opts;
  opts.policy = policy_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(adaptive_integrate([&](const double* x) { return r.value(x); }, simplex, 1e-7, opts).value);
}

void BM_oracle(benchmark::State& state) {
  auto d = examples::fubini_study({1, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(lattice_sum_oracle(d, 150, policy_of(state)).vol_hat);
}

BENCHMARK(BM_lattice_sum)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cubature_roof)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void check_agreement() {
  auto pts = grid(300);
  double a = kernels::lattice_sum(smooth, 2, pts, ExecPolicy::serial);
  double b = kernels::lattice_sum(smooth, 2, pts, ExecPolicy::parallel);
  auto d = examples::fubini_study({1, 1, 1});
  double c = lattice_sum_oracle(d, 60, ExecPolicy::serial).vol_hat;
  double e = lattice_sum_oracle(d, 60, ExecPolicy::parallel).vol_hat;
  if (a != b || c != e) {
    std::fprintf(stderr, "serial and parallel kernels disagree: %.17g %.17g / %.17g %.17g\n", a, b, c, e);
    std::exit(1);
  }
  std::printf("serial == parallel (bitwise) on lattice_sum and the oracle; threads = %d\n", max_threads());
}

}  // namespace

int main(int argc, char** argv) {
  check_agreement();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}

#include <benchmark/benchmark.h>

#include <cmath>

#include <specprop/dirac.hpp>
#include <specprop/product_triple.hpp>
#include <specprop/quantum_torus.hpp>

using namespace specprop;

namespace {

// g = delta + 0.3 cos(x1 + x2) [[1, 1/3], [1/3, 2/3]]
MetricField wavy_metric(int grid) {
  SymmetricField f = SymmetricField::constant(RMatrix::Identity(2, 2), grid);
  const double amp[3] = {0.15, 0.05, 0.1};
  const int slots[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int s = 0; s < 3; ++s) {
    f.component(slots[s][0], slots[s][1]).add({1, 1}, cplx(amp[s], 0));
    f.component(slots[s][0], slots[s][1]).add({-1, -1}, cplx(amp[s], 0));
  }
  return MetricField::from(f);
}

void BM_AssembleDirac(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const MetricField g = wavy_metric(48);
  const CliffordRep rep = default_rep(2);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dirac(g, N, rep));
  state.counters["dim"] = static_cast<double>(2 * (2 * N + 1) * (2 * N + 1));
}
BENCHMARK(BM_AssembleDirac)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Eigensolve(benchmark::State& state) {
  const DiracAssembly a = assemble_dirac(wavy_metric(48), static_cast<int>(state.range(0)), default_rep(2));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_of(a.matrix));
  state.counters["dim"] = static_cast<double>(a.matrix.dim());
}
BENCHMARK(BM_Eigensolve)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_QtSpectrum(benchmark::State& state) {
  RMatrix h(2, 2);
  h << 1.3, 0.2, 0.2, 0.9;
  const TorusTripleSpec spec = TorusTripleSpec::make(InnerProduct::from(h), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qt_spectrum(spec));
}
BENCHMARK(BM_QtSpectrum)->Arg(4)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ProductEven(benchmark::State& state) {
  const DiracAssembly a = assemble_dirac(wavy_metric(48), static_cast<int>(state.range(0)), default_rep(2));
  CMatrix D(2, 2), G(2, 2);
  D << 0, 0.7, 0.7, 0;
  G << 1, 0, 0, -1;
  const FiniteTriple F = FiniteTriple::from(D, G);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_of(product_even(a, F)));
}
BENCHMARK(BM_ProductEven)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Serial reference vs OpenMP path for the kernels that dominate a run: the
// block matvec inside every Lanczos step and the spectrum evaluation on the
// omega grid.

#include <vector>

#include <benchmark/benchmark.h>

#include "bsespec/hamiltonian.hpp"
#include "bsespec/kernels.hpp"
#include "bsespec/spectrum.hpp"

namespace {

using namespace bsespec;
using kernels::Exec;

Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_StructuredApply(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const BseHamiltonian h = make_waived_hamiltonian(Matrix::Random(n, n), Matrix::Random(n, n));
  const Vector x = Vector::Random(n);
  Vector y;
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    kernels::structured_apply(h.a(), h.b(), x, -1.0, y, exec);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * n * n);
}

void BM_Gemv(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Matrix m = Matrix::Random(n, n);
  const Vector x = Vector::Random(n);
  Vector y;
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    kernels::gemv(m, x, y, exec);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_OddSpectrum(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const std::vector<double> omegas = uniform_grid(0.0, 10.0, 2000);
  std::vector<double> theta(nodes), coeff(nodes, 1.0), out(omegas.size());
  for (int j = 0; j < nodes; ++j) theta[j] = 0.5 + 9.0 * j / nodes;
  const BroadeningKernel g(KernelShape::Gaussian, 0.1);
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    kernels::odd_spectrum(omegas, theta, coeff, g, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * nodes * static_cast<long>(omegas.size()));
}

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_StructuredApply)->ArgsProduct({{256, 1024, 2048}, {0, 1}});
BENCHMARK(BM_Gemv)->ArgsProduct({{256, 1024, 2048}, {0, 1}});
BENCHMARK(BM_OddSpectrum)->ArgsProduct({{64, 256, 1024}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();

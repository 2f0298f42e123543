#include <benchmark/benchmark.h>

#include "xxz/gauge.hpp"
#include "xxz/lattice.hpp"
#include "xxz/maba.hpp"
#include "xxz/sampling.hpp"
#include "xxz/solver.hpp"
#include "xxz/transfer.hpp"

namespace {

using namespace xxz;

OpenChain chain_for(int N, std::uint64_t seed = 7) {
  Sampler s(seed);
  const ModelParams model = s.model(N);
  return OpenChain(model, s.boundary());
}

void BM_DoubleRowMonodromy(benchmark::State& state) {
  const OpenChain chain = chain_for(int(state.range(0)));
  const Complex u(1.1, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(chain.double_row_monodromy(u));
}
BENCHMARK(BM_DoubleRowMonodromy)->DenseRange(1, 6);

void BM_TransferMatrix(benchmark::State& state) {
  const OpenChain chain = chain_for(int(state.range(0)));
  const Complex u(0.9, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(chain.transfer_matrix(u));
}
BENCHMARK(BM_TransferMatrix)->DenseRange(1, 6);

void BM_BetheVector(benchmark::State& state) {
  const int N = int(state.range(0));
  Sampler s(11);
  const ModelParams model = s.model(N);
  const OpenChain chain(model, s.boundary());
  const BetheSystem sys(chain, 0, N);
  const auto us = s.roots(N, chain.scalars(), model.v);
  for (auto _ : state) benchmark::DoNotOptimize(sys.vector(us));
}
BENCHMARK(BM_BetheVector)->DenseRange(1, 4);

void BM_MultiStart(benchmark::State& state) {
  const BetheSolver solver(chain_for(int(state.range(0)), 3));
  MultiStartOptions opts;
  opts.starts = 32;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(multi_start(solver, opts));
}
BENCHMARK(BM_MultiStart)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

// one two-site gate: in-place kernel against a dense embedded product
void BM_GateKernel(benchmark::State& state) {
  const int n = int(state.range(0));
  const Matrix gate = r_matrix(Complex(1.3, 0.2), Scalars(Complex(1.4, 0.5)));
  Matrix m = Matrix::Identity(1L << n, 1L << n);
  for (auto _ : state) {
    apply_gate_left(m, n, gate, {0, n - 1});
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_GateKernel)->DenseRange(2, 8, 2);

void BM_GateEmbedded(benchmark::State& state) {
  const int n = int(state.range(0));
  const Scalars sc(Complex(1.4, 0.5));
  const Layout layout = chain_layout(n - 1, 1);
  const QuantumOperator gate = r_operator(Complex(1.3, 0.2), sc, aux_space(), site_space(n - 1));
  const Matrix dense = gate.embed(layout).matrix();
  Matrix m = Matrix::Identity(1L << n, 1L << n);
  for (auto _ : state) {
    m = dense * m;
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_GateEmbedded)->DenseRange(2, 8, 2);

}  // namespace
BENCHMARK_MAIN();

#include <trotter/experiments.hpp>
#include <trotter/propagators.hpp>
#include <trotter/reference.hpp>

#include <benchmark/benchmark.h>

using namespace trotter;

namespace {

void BM_ExpKinetic(benchmark::State& state) {
  const Problem pb = make_problem(static_cast<int>(state.range(0)), Discretization::FiniteDifference);
  Eigen::VectorXcd psi = pb.psi0.amplitudes();
  for (auto _ : state) {
    exp_kinetic_inplace(1e-4, pb.kinetic, {psi.data(), static_cast<std::size_t>(psi.size())});
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExpKinetic)->RangeMultiplier(4)->Range(64, 4096);

void BM_Evolve(benchmark::State& state, Scheme scheme) {
  const Problem pb = make_problem(static_cast<int>(state.range(0)), Discretization::FiniteDifference);
  const ControlPair pair = make_control_preset("modulated-mass", {10.0}, 0.16);
  constexpr long kSteps = 100;
  for (auto _ : state) {
    const EvolutionResult r = evolve(scheme, pair, pb.kinetic, pb.potential, 0.16, kSteps, pb.psi0);
    benchmark::DoNotOptimize(r.final_state.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * kSteps);
}
BENCHMARK_CAPTURE(BM_Evolve, s1, Scheme::S1)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_Evolve, g1, Scheme::G1)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_Evolve, s2, Scheme::S2)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(BM_Evolve, g2, Scheme::G2)->Arg(256)->Arg(1024);

void BM_DenseReference(benchmark::State& state) {
  const Problem pb = make_problem(static_cast<int>(state.range(0)), Discretization::FiniteDifference);
  const ControlPair pair = make_control_preset("modulated-mass", {1.0}, 1e-3);
  for (auto _ : state) {
    const Eigen::MatrixXcd U = dense_reference_propagator(pair, pb.kinetic, pb.potential, 1e-3, 1e-11);
    benchmark::DoNotOptimize(U.data());
  }
}
BENCHMARK(BM_DenseReference)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

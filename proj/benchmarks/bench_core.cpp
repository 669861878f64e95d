#include <benchmark/benchmark.h>

#include <vector>

#include "collateral/evolve.hpp"
#include "collateral/hamiltonians.hpp"
#include "collateral/idling.hpp"
#include "collateral/noon.hpp"
#include "collateral/params.hpp"

using namespace collateral;

namespace {

const CircuitParams kRef = CircuitParams::reference(50, 70);

void BM_Derive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(derive(kRef));
}
BENCHMARK(BM_Derive);

// Eigendecomposition cost as the Fock cutoff grows.
void BM_PropagatorBuild(benchmark::State& state) {
  const HilbertSpace space(static_cast<int>(state.range(0)), 2);
  const Operator h = full_rwa(space, derive(kRef.with_flux(Flux::from_phi0(1.0))));
  for (auto _ : state) benchmark::DoNotOptimize(Propagator(h));
  state.SetLabel(std::to_string(space.dim()) + " states");
}
BENCHMARK(BM_PropagatorBuild)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_PropagatorApply(benchmark::State& state) {
  const HilbertSpace space(static_cast<int>(state.range(0)), 2);
  const Propagator u(full_rwa(space, derive(kRef.with_flux(Flux::from_phi0(1.0)))));
  const StateVector psi = basis_state(space, 1, Level::g, 0);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(u.apply(psi, t));
  }
}
BENCHMARK(BM_PropagatorApply)->Arg(3)->Arg(10);

void BM_IdlingNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(idling_flux_numeric(kRef));
}
BENCHMARK(BM_IdlingNumeric)->Unit(benchmark::kMicrosecond);

void BM_SweepFlux(benchmark::State& state) {
  const auto flux = linspace(0.9, 1.1, 51);
  const auto times = linspace(0.0, 1.5e-6, 101);
  SweepOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_flux(kRef, flux, times, opt));
}
BENCHMARK(BM_SweepFlux)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FidelityScan(benchmark::State& state) {
  const std::vector<double> ratios{1.0 / 50, 1.0 / 75, 1.0 / 100};
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fidelity_scan(kRef, ratios, 3, {}, threads));
}
BENCHMARK(BM_FidelityScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();

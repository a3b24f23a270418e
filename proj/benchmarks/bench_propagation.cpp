// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "icebox/composite_state.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/hybrid.hpp"
#include "icebox/instance.hpp"
#include "icebox/propagator.hpp"

namespace {

using namespace icebox;

// One unit of simulated time on a 9-spin instance.
void BM_Propagate(benchmark::State& state) {
  const auto integrator = static_cast<Integrator>(state.range(0));
  const auto inst = build_two_minima_instance(9, 4);
  const BathSpec bath{default_n_max(9), 1.0};
  const auto h = build_total(inst.spin_glass, bath, CouplingSpec{0.2});
  const auto psi0 = initial_state(inst.spin_glass, inst.initial_config, bath);
  PropagationOptions opts{1.0, 0.005, 0.25, integrator};
  for (auto _ : state) {
    auto psi = propagate(h, psi0.amplitudes, opts, {});
    benchmark::DoNotOptimize(psi.data());
  }
  state.SetLabel(integrator == Integrator::kRk4 ? "rk4" : "chebyshev");
}
BENCHMARK(BM_Propagate)
    ->Arg(static_cast<int>(Integrator::kRk4))
    ->Arg(static_cast<int>(Integrator::kChebyshev))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

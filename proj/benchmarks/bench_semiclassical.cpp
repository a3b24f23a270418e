// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "icebox/classical_bath.hpp"
#include "icebox/instance.hpp"
#include "icebox/trajectory.hpp"

namespace {

using namespace icebox;

// One classical-bath trajectory of t = 5.
void BM_SemiclassicalTrajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = generate_instance(n, 2);
  const auto& sg = inst.spin_glass;
  const ObservableSet obs(sg, inst.initial_config);
  const CVector psi0 = spin_basis_state(inst.initial_config, n);
  SemiclassicalOptions opts;
  opts.t_final = 5.0;
  opts.sample_interval = 0.5;
  for (auto _ : state) {
    auto tr = evolve_semiclassical(sg, 0.2, psi0, ClassicalBathState{0.5, -0.3}, obs, opts);
    benchmark::DoNotOptimize(tr);
  }
}
BENCHMARK(BM_SemiclassicalTrajectory)->DenseRange(5, 11, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

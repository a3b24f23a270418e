// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "icebox/composite_state.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/instance.hpp"
#include "icebox/lindblad.hpp"

namespace {

using namespace icebox;

void BM_MasterRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = generate_instance(n, 5);
  const BathSpec bath{8, 1.0};
  const auto h = build_total(inst.spin_glass, bath, CouplingSpec{0.6});
  const auto psi = initial_state(inst.spin_glass, inst.initial_config, bath);
  const CMatrix rho = DensityMatrix::pure(psi.amplitudes).rho;
  for (auto _ : state) {
    CMatrix d = master_rhs(h, 0.05, rho);
    benchmark::DoNotOptimize(d.data());
  }
}
BENCHMARK(BM_MasterRhs)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

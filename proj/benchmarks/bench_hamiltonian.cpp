// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "icebox/hamiltonian.hpp"
#include "icebox/instance.hpp"

namespace {

using namespace icebox;

void BM_BuildTotal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = generate_instance(n, 1);
  const BathSpec bath{default_n_max(n), 1.0};
  for (auto _ : state) {
    auto h = build_total(inst.spin_glass, bath, CouplingSpec{0.2});
    benchmark::DoNotOptimize(h.matrix().nonZeros());
  }
}
BENCHMARK(BM_BuildTotal)->DenseRange(5, 11, 2)->Unit(benchmark::kMillisecond);

void BM_Apply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = generate_instance(n, 1);
  const auto h = build_total(inst.spin_glass, BathSpec{default_n_max(n), 1.0}, CouplingSpec{0.2});
  CVector x = CVector::Ones(h.dimension()), y(h.dimension());
  for (auto _ : state) {
    h.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * h.matrix().nonZeros());
}
BENCHMARK(BM_Apply)->DenseRange(5, 11, 2);

}  // namespace

BENCHMARK_MAIN();

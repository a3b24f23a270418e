// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "icebox/error.hpp"
#include "icebox/hybrid.hpp"

namespace icebox {

ProblemInstance build_two_minima_instance(int n_spins, int hamming_gap) {
  if (hamming_gap < 1 || hamming_gap > n_spins) {
    throw ConfigError("Hamming gap must lie in [1, n_s]");
  }
  if (hamming_gap == 1) {
    throw ConfigError("two strict local minima cannot be single-flip neighbours");
  }
  if (n_spins > 20) throw ConfigError("two-minima construction is verified exhaustively, n_s <= 20");
  const int h = hamming_gap;

  // Cluster A = qubits [0, h): ferromagnetic ring (a single bond when h = 2).
  std::vector<Edge> edges;
  if (h == 2) {
    edges.push_back({0, 1, HalfInt::from_twice(-2)});
  } else {
    for (int m = 0; m + 1 < h; ++m) edges.push_back({m, m + 1, HalfInt::from_twice(-1)});
    edges.push_back({0, h - 1, HalfInt::from_twice(-1)});
  }
  // Fields tilt A towards all-down by the smallest parity-compatible amount;
  // every qubit outside A is pinned down.
  std::vector<HalfInt> on_site(n_spins, HalfInt{});
  if (h % 2 == 1) {
    on_site[h / 2] = HalfInt::from_twice(1);
  } else {
    on_site[0] = HalfInt::from_twice(1);
    on_site[h / 2] = HalfInt::from_twice(1);
  }
  for (int m = h; m < n_spins; ++m) on_site[m] = HalfInt::from_twice(2);

  ProblemInstance inst;
  inst.spin_glass = SpinGlass(n_spins, std::move(on_site), std::move(edges));
  inst.seed = 0;
  inst.metadata.chain_links = static_cast<int>(inst.spin_glass.edges().size());

  const auto minima = local_minima(inst.spin_glass);
  if (minima.size() != 2 || hamming_distance(minima[0], minima[1]) != h) {
    throw ConfigError("two-minima construction produced " + std::to_string(minima.size()) +
                      " strict minima for n_s = " + std::to_string(n_spins) +
                      ", gap = " + std::to_string(h));
  }
  const auto& sg = inst.spin_glass;
  if (sg.energy_twice(minima[0]) == sg.energy_twice(minima[1])) {
    throw ConfigError("two-minima construction produced degenerate minima");
  }
  inst.initial_config =
      sg.energy_twice(minima[0]) > sg.energy_twice(minima[1]) ? minima[0] : minima[1];
  return inst;
}

}  // namespace icebox

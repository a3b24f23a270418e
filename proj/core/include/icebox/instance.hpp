// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "icebox/spin_glass.hpp"

namespace icebox {

struct InstanceMetadata {
  int chain_links = 0;
  int random_links = 0;
  // Qubits whose extra link could not be placed without a duplicate.
  int skipped_links = 0;
};

struct ProblemInstance {
  SpinGlass spin_glass;
  std::uint64_t seed = 0;
  // Start configuration for cooling runs (the higher-energy minimum).
  Config initial_config = 0;
  InstanceMetadata metadata;
};

enum class FieldPlacement {
  // J1 = +1/2 on qubit 0.
  kFirstQubit,
  // J1 = +1/2 on qubits 0 and 1 (even n_s) so that the field breaks the
  // degeneracy while matching the photon parity of an even flip count.
  kParityMatched,
};

// Chain of n_s qubits plus one random extra link per qubit, all couplings
// -1/2, field placed per `fields`. Starts from all-up; all-down is the ground
// state.
ProblemInstance generate_instance(int n_spins, std::uint64_t seed,
                                  FieldPlacement fields = FieldPlacement::kFirstQubit);

// JSON with {n_s, on_site, edges: [[m, m', "J"]], seed, initial}. Couplings are
// written as decimal strings so they round-trip exactly.
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);
ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& inst, const std::string& path);

}  // namespace icebox

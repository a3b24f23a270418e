// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "icebox/composite_state.hpp"
#include "icebox/observables.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

struct TrajectoryRecord {
  double t = 0.0;
  double p_ground = 0.0;
  double p_lower = 0.0;
  double entropy = 0.0;
  double correlation = 0.0;
  double energy = 0.0;
  double norm = 1.0;
  Complex parity{0.0, 0.0};
  std::vector<double> hamming;
  std::vector<double> fock;
};

struct Trajectory {
  int n_spins = 0;
  int n_max = 0;
  std::vector<TrajectoryRecord> records;
  CompositeState final_state;

  std::vector<double> times() const;
  std::vector<double> column_p_ground() const;
  std::vector<double> column_p_lower() const;
};

struct EvolveOptions {
  PropagationOptions propagation;
  // Largest allowed population of the top Fock level.
  double truncation_tol = 1e-6;
  // Off switches for the costlier observables.
  bool record_entanglement = true;
};

// Integrates the composite state and records observables relative to the
// reference configuration of `obs`. Throws EvolutionError when the top Fock
// level exceeds the truncation tolerance.
Trajectory evolve(const SparseHamiltonian& h, const CompositeState& psi0,
                  const ObservableSet& obs, const EvolveOptions& opts);

// Builds the Hamiltonian, starts from |config, 0>, and retries with grown_n_max
// (up to `max_retries` times) on truncation errors.
Trajectory cool_quantum(const SpinGlass& sg, Config config, double lambda,
                        const EvolveOptions& opts, int n_max = -1, int max_retries = 6);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace icebox

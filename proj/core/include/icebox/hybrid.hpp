// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "icebox/composite_state.hpp"
#include "icebox/instance.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

// Steepest single-flip descent. Ties go to the lowest qubit index; stops as
// soon as no flip strictly lowers the energy.
Config classical_descent(const SpinGlass& sg, Config start);

// Born-rule sample of a spin configuration from the Fock-marginalised state.
Config measure(const CompositeState& psi, std::mt19937_64& rng);
Config measure_marginal(const RVector& marginal, std::mt19937_64& rng);

struct HybridConfig {
  double lambda = 0.2;
  double t_cool = 20.0;
  int max_iterations = 50;
  // Defaults to the exhaustive ground energy when n_s <= 20.
  std::optional<double> stop_threshold;
  std::uint64_t seed = 0;
  // Seed configuration; drawn uniformly from the seed stream when unset.
  std::optional<Config> start;
  int n_max = -1;
  PropagationOptions propagation{20.0, 0.005, 1.0, Integrator::kRk4};
};

struct HybridIteration {
  int iter = 0;
  Config config_s1 = 0;
  double energy_s1 = 0.0;
  Config config_s2 = 0;
  Config config_s3 = 0;
  double energy_s3 = 0.0;
  bool accepted = false;
};

struct HybridTrace {
  Config seed_config = 0;
  Config initial_s1 = 0;
  double initial_energy = 0.0;
  Config final_config = 0;
  double final_energy = 0.0;
  double threshold = 0.0;
  bool reached_threshold = false;
  bool budget_exhausted = false;
  std::vector<HybridIteration> iterations;
};

// Replaces the measured configuration; used to inject faults.
using MeasurementFilter = std::function<Config(int iter, Config measured, std::mt19937_64& rng)>;

// Steps: descend the seed to s1; cool |s1, 0> for t_cool and measure s2;
// descend s2 to s3; accept s3 when E(s3) <= E(s1); repeat until E(s1) reaches
// the threshold or the iteration budget runs out.
HybridTrace run_hybrid(const ProblemInstance& inst, const HybridConfig& cfg,
                       const MeasurementFilter& filter = {});

void write_hybrid_csv(std::ostream& out, const HybridTrace& trace);

// Spin glass with exactly two strict local minima at Hamming distance `gap`.
// The higher minimum becomes `initial_config`. Throws ConfigError when the
// construction cannot meet the request.
ProblemInstance build_two_minima_instance(int n_spins, int hamming_gap);

}  // namespace icebox

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "icebox/observables.hpp"
#include "icebox/spin_glass.hpp"
#include "icebox/types.hpp"

namespace icebox {

struct ClassicalBathState {
  double q = 0.0;
  double phi = 0.0;
};

// q, phi ~ N(0, 1/2) independently, i.e. density exp(-(q^2 + phi^2)) / pi.
ClassicalBathState sample_initial(std::mt19937_64& rng);

struct SemiclassicalOptions {
  double t_final = 15.0;
  double dt = 0.005;
  double sample_interval = 0.05;
  double omega = 1.0;
  double divergence_limit = 1e3;
  // Occupation histogram bins (0..n_max) for the classical oscillator.
  int n_max = 8;
};

struct SemiclassicalTrajectory {
  std::vector<double> t;
  std::vector<double> p_ground;
  std::vector<double> p_lower;
  std::vector<std::vector<double>> hamming;
  std::vector<std::vector<double>> occupation;
  std::vector<double> q;
  std::vector<double> phi;
  std::vector<double> norm;
  std::vector<double> energy;
  CVector final_spin_state;
  bool aborted = false;
  double abort_time = 0.0;
};

// Ehrenfest dynamics
//   i psi' = (H_s + 2 lambda q sum_m sigma_y,m) psi
//   q'     = -omega phi
//   phi'   =  omega q + lambda sum_m <sigma_y,m>
// integrated with RK4 on the stacked (psi, q, phi) vector. Divergence of
// |q| or |phi| beyond the limit ends the trajectory with aborted = true.
SemiclassicalTrajectory evolve_semiclassical(const SpinGlass& sg, double lambda,
                                             const CVector& psi_s0,
                                             const ClassicalBathState& bath0,
                                             const ObservableSet& obs,
                                             const SemiclassicalOptions& opts);

// sum_m sigma_y,m applied to a spin state.
CVector apply_sigma_y_sum(const CVector& psi, int n_spins);

// <H_s> + omega (q^2 + phi^2) + 2 lambda q <sum sigma_y>.
double semiclassical_energy(const SpinGlass& sg, double lambda, const CVector& psi,
                            const ClassicalBathState& bath, double omega = 1.0);

struct EnsembleResult {
  int samples = 0;
  int aborts = 0;
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> p_ground;
  std::vector<double> p_ground_stderr;
  std::vector<double> p_lower;
  std::vector<double> p_lower_stderr;
  std::vector<double> energy;
  std::vector<double> norm;
  std::vector<std::vector<double>> hamming;
  std::vector<std::vector<double>> occupation;
};

struct EnsembleOptions {
  int samples = 1000;
  std::uint64_t seed = 0;
  int workers = 0;
  double max_abort_fraction = 0.01;
};

// Runs `samples` trajectories from bath draws on the stream (seed, index).
// Throws EvolutionError when aborts exceed the allowed fraction.
EnsembleResult ensemble_average(const SpinGlass& sg, double lambda, const CVector& psi_s0,
                                const ObservableSet& obs, const SemiclassicalOptions& opts,
                                const EnsembleOptions& ens);

void write_ensemble_csv(std::ostream& out, const EnsembleResult& res, int n_spins);
std::string ensemble_metadata_json(const EnsembleResult& res);

// Basis spin state |config>.
CVector spin_basis_state(Config config, int n_spins);

}  // namespace icebox

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "icebox/spin_glass.hpp"
#include "icebox/types.hpp"

namespace icebox {

// Factors of one time step U = exp(-iH dt) ~ U0 Up UH with
//   U0 = exp(-i H0 dt),  H0 = H_s + omega (n + 1/2)
//   Up = exp(-i lambda q [2 dt S_y + 2 dt^2 S_x])
//   UH = exp(+i lambda omega dt^2 phi S_y)
// where q = i(b^dag - b)/2, phi = (b^dag + b)/2, S_y = sum sigma_y and
// S_x = sum J1 sigma_x + sum_edges J2 (sigma_x sigma_z + sigma_z sigma_x).
struct WalkOperators {
  CMatrix exact;
  CMatrix u0;
  CMatrix up;
  CMatrix uh;

  CMatrix factored() const { return u0 * up * uh; }
  // Largest singular value of exact - factored.
  double error() const;
  // Largest deviation from unitarity among the four matrices.
  double unitarity_error() const;
};

WalkOperators build_walk_operators(const SpinGlass& sg, double lambda, double dt, int n_max,
                                   double omega = 1.0);

// Single qubit with H_s = sigma_z / 2 on resonance.
double decomposition_error(double lambda, double dt, int n_max);

struct MultiQubitWalk {
  CMatrix factored;
  double error = 0.0;
};
MultiQubitWalk multi_qubit_walker(const SpinGlass& sg, double lambda, double dt, int n_max);

// Total parity operator on the spin (x) Fock space (diagonal).
CMatrix parity_operator(int n_spins, int n_max);

// Largest singular value.
double spectral_norm(const CMatrix& m);

// Rotation taking unprimed Pauli axes to primed ones: row i gives sigma_i in
// terms of (sigma'_x, sigma'_y, sigma'_z).
Eigen::Matrix3d walk_basis_rotation();

// Restriction of U0 to the basis states `indices` compared with the nearest
// multiple of the identity. Zero when all their H0 eigenvalues agree modulo
// 2 pi / dt.
double on_site_phase_deviation(const SpinGlass& sg, int n_max, double dt,
                               const std::vector<Eigen::Index>& indices);

struct WalkSpread {
  std::vector<double> steps;
  std::vector<double> coherent_sigma;
  std::vector<double> dephased_sigma;
  double coherent_exponent = 0.0;
  double dephased_exponent = 0.0;
};

struct HadamardReport {
  double lambda = 0.0;
  double dt = 0.0;
  double omega = 1.0;
  double displacement = 0.0;
  double coin_angle_per_site = 0.0;
  double coin_residual = 0.0;
  double translation_axis_residual = 0.0;
  Eigen::Matrix3d rotation;
  double rotation_det = 0.0;
  double rotation_orthogonality_error = 0.0;
  // Trotter error at the walk parameters and the small-dt slope at lambda.
  double error = 0.0;
  double slope = 0.0;
  std::vector<double> slope_dts;
  std::vector<double> slope_errors;
  WalkSpread spread;
  std::vector<std::string> notes;
};

inline double hadamard_lambda() { return 0.74543907352532045; }

// Lattice walk with the coin and shift taken from UH and Up at the walk
// parameters; U0 enters as a global phase.
WalkSpread walk_spread(double lambda, double omega, int steps, int fit_from = 5);

HadamardReport hadamard_condition_check(int n_max = 12, int steps = 50);

std::string hadamard_report_json(const HadamardReport& report);

}  // namespace icebox

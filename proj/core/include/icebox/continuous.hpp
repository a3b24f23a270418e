// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "icebox/classical_bath.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/types.hpp"

namespace icebox {

// V(x) = quad_weight (x - offset)^2 - cos_amplitude cos(x),
// T = -kinetic d^2/dx^2.
struct ContinuousParams {
  int n_grid = 640;
  double quad_weight = 0.1;
  double cos_amplitude = 1.0;
  double kinetic = 0.5;
  // Tilt offset; NaN means "solve for target_gap".
  double offset = std::numeric_limits<double>::quiet_NaN();
  // Energy difference between the two well bottoms when offset is solved.
  double target_gap = 1.0;
  // Grid extends this far (in units of pi) beyond the outermost wells.
  double margin = 4.0;
  // Explicit range; used when x_max > x_min.
  double x_min = 0.0;
  double x_max = 0.0;
  // Minimum weight inside the higher well for the initial eigenstate.
  double basin_weight = 0.6;
};

class ContinuousSystem {
 public:
  explicit ContinuousSystem(const ContinuousParams& params);

  const ContinuousParams& params() const { return params_; }
  int n_grid() const { return static_cast<int>(x_.size()); }
  double dx() const { return dx_; }
  double offset() const { return offset_; }
  const RVector& grid() const { return x_; }
  const RVector& potential() const { return v_; }
  const RSparse& hamiltonian() const { return h_; }
  const RSparse& derivative() const { return d1_; }
  // Local minima of V on the continuum, ascending in x.
  const std::vector<double>& well_positions() const { return wells_; }

  const RVector& eigenvalues() const { return evals_; }
  const RMatrix& eigenvectors() const { return evecs_; }

  // Lowest eigenstate with most of its weight inside the basin of the
  // higher well; the ground state when there is a single well.
  int initial_eigen_index() const { return initial_index_; }
  RVector initial_wavefunction() const { return evecs_.col(initial_index_); }
  double initial_energy() const { return evals_(initial_index_); }

  double potential_at(double x) const;

 private:
  ContinuousParams params_;
  double offset_ = 0.0;
  double dx_ = 0.0;
  RVector x_;
  RVector v_;
  RSparse h_;
  RSparse d1_;
  std::vector<double> wells_;
  RVector evals_;
  RMatrix evecs_;
  int initial_index_ = 0;
};

// Default coupling for the double well: one full exchange between the wells
// fits inside t = 30 / omega.
inline constexpr double kDefaultContinuousLambda = 0.3;

// Solves for the offset giving two wells whose bottoms differ by target_gap.
double solve_offset(const ContinuousParams& params);

struct ContinuousOptions {
  double t_final = 30.0;
  // <= 0 picks min(0.005, 1.5 / spectral radius).
  double dt = 0.0;
  double sample_interval = 0.1;
  double boundary_tol = 1e-8;
  int boundary_points = 4;
  bool record_density = true;
  double truncation_tol = 1e-6;
};

struct ContinuousTrajectory {
  std::vector<double> t;
  // Weight on H_s eigenstates below the initial energy.
  std::vector<double> p_lower;
  // Weight on grid points where V(x) is below the initial energy.
  std::vector<double> p_lower_potential;
  std::vector<double> norm;
  std::vector<double> energy;
  std::vector<std::vector<double>> density;
};

// Quantum bath: H = H_s + omega (n + 1/2) - lambda d/dx (x) (b^dag - b).
ContinuousTrajectory evolve_continuous_quantum(const ContinuousSystem& sys, const BathSpec& bath,
                                               double lambda, const RVector& psi0,
                                               const ContinuousOptions& opts);

// Classical bath: i psi' = (H_s - 2 lambda q p) psi, q' = -omega phi,
// phi' = omega q - lambda <p>, with p = -i d/dx.
ContinuousTrajectory evolve_continuous_classical(const ContinuousSystem& sys, double lambda,
                                                 const RVector& psi0,
                                                 const ClassicalBathState& bath0,
                                                 const ContinuousOptions& opts,
                                                 double omega = 1.0);

struct ContinuousEnsemble {
  int samples = 0;
  int aborts = 0;
  ContinuousTrajectory mean;
  std::vector<double> p_lower_stderr;
};

ContinuousEnsemble continuous_classical_ensemble(const ContinuousSystem& sys, double lambda,
                                                 const RVector& psi0,
                                                 const ContinuousOptions& opts,
                                                 const EnsembleOptions& ens,
                                                 double omega = 1.0);

// Largest drop of a trace below its running maximum.
double max_drawdown(const std::vector<double>& values);

void write_density_csv(std::ostream& out, const ContinuousTrajectory& traj);
void write_continuous_csv(std::ostream& out, const ContinuousTrajectory& traj);
std::string continuous_metadata_json(const ContinuousSystem& sys, double lambda);

}  // namespace icebox

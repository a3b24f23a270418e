// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "icebox/hamiltonian.hpp"
#include "icebox/observables.hpp"
#include "icebox/types.hpp"

namespace icebox {

struct DensityMatrix {
  CMatrix rho;

  static DensityMatrix pure(const CVector& psi);
  double trace() const { return rho.trace().real(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
};

struct MasterOptions {
  double t_final = 5.0;
  double dt = 0.005;
  double sample_interval = 0.05;
  double positivity_slack = 1e-7;
  double hermiticity_tol = 1e-10;
  double trace_tol = 1e-8;
  // Run the eigenvalue positivity check on every k-th sample.
  int positivity_every = 1;
};

struct MasterTrajectory {
  std::vector<double> t;
  std::vector<double> p_ground;
  std::vector<double> trace;
  std::vector<double> min_eigenvalue;
  std::vector<double> mean_n;
  DensityMatrix final_state;
};

// d rho/dt = -i [H, rho] - kappa (N rho + rho N - 2 b rho b^dag), N = b^dag b.
// `sg` defines the ground projector for P_g (pass nullptr to skip it).
MasterTrajectory evolve_master(const SparseHamiltonian& h, double kappa,
                               const DensityMatrix& rho0, const SpinGlass* sg,
                               const MasterOptions& opts);

// Right-hand side of the master equation, exposed for tests and benchmarks.
CMatrix master_rhs(const SparseHamiltonian& h, double kappa, const CMatrix& rho);

void write_master_csv(std::ostream& out, const MasterTrajectory& traj);

}  // namespace icebox

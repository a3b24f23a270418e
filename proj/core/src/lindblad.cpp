// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "icebox/error.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

DensityMatrix DensityMatrix::pure(const CVector& psi) { return {psi * psi.adjoint()}; }

double DensityMatrix::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

// out = H rho with H in CSR form.
void sparse_times_dense(const RSparse& h, const CMatrix& rho, CMatrix& out) {
  const Eigen::Index d = h.rows();
  out.resize(d, rho.cols());
  const auto* outer = h.outerIndexPtr();
  const auto* inner = h.innerIndexPtr();
  const double* val = h.valuePtr();
  for (Eigen::Index c = 0; c < rho.cols(); ++c) {
    const Complex* x = rho.col(c).data();
    Complex* y = out.col(c).data();
    for (Eigen::Index i = 0; i < d; ++i) {
      double re = 0.0, im = 0.0;
      for (auto p = outer[i]; p < outer[i + 1]; ++p) {
        re += val[p] * x[inner[p]].real();
        im += val[p] * x[inner[p]].imag();
      }
      y[i] = Complex(re, im);
    }
  }
}

void rhs_into(const SparseHamiltonian& h, double kappa, const CMatrix& rho, CMatrix& x, CMatrix& out) {
  sparse_times_dense(h.matrix(), rho, x);
  out = Complex(0.0, -1.0) * (x - x.adjoint());
  if (kappa == 0.0) return;
  const Eigen::Index d = rho.rows();
  const int nf = h.fock_dim();
  for (Eigen::Index j = 0; j < d; ++j) {
    const int nj = static_cast<int>(j % nf);
    for (Eigen::Index i = 0; i < d; ++i) {
      const int ni = static_cast<int>(i % nf);
      Complex v = static_cast<double>(ni + nj) * rho(i, j);
      if (ni + 1 < nf && nj + 1 < nf) {
        v -= 2.0 * std::sqrt((ni + 1.0) * (nj + 1.0)) * rho(i + 1, j + 1);
      }
      out(i, j) -= kappa * v;
    }
  }
}

}  // namespace

CMatrix master_rhs(const SparseHamiltonian& h, double kappa, const CMatrix& rho) {
  CMatrix x, out;
  rhs_into(h, kappa, rho, x, out);
  return out;
}

MasterTrajectory evolve_master(const SparseHamiltonian& h, double kappa, const DensityMatrix& rho0,
                               const SpinGlass* sg, const MasterOptions& opts) {
  if (kappa < 0.0) throw ConfigError("kappa must be non-negative");
  if (rho0.rho.rows() != h.dimension() || rho0.rho.cols() != h.dimension()) {
    throw InputError("density matrix does not match the Hamiltonian");
  }
  if (rho0.hermiticity_error() > opts.hermiticity_tol) throw InputError("initial density matrix is not Hermitian");
  if (std::fabs(rho0.trace() - 1.0) > opts.trace_tol) throw InputError("initial density matrix trace is not 1");
  if (!(opts.dt > 0.0) || !(opts.sample_interval > 0.0)) {
    throw ConfigError("time step and sample interval must be positive");
  }

  const int nf = h.fock_dim();
  std::vector<char> ground;
  if (sg) {
    ObservableSet obs(*sg, 0);
    ground.resize(sg->n_configs());
    for (Config k = 0; k < sg->n_configs(); ++k) ground[k] = obs.is_ground(k);
  }

  MasterTrajectory out;
  CMatrix rho = rho0.rho;
  int sample_index = 0;
  auto record = [&](double t) {
    double pg = 0.0, mean_n = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      double p = rho(i, i).real();
      mean_n += static_cast<double>(i % nf) * p;
      if (!ground.empty() && ground[i / nf]) pg += p;
    }
    out.t.push_back(t);
    out.p_ground.push_back(pg);
    out.trace.push_back(rho.trace().real());
    out.mean_n.push_back(mean_n);
    double min_ev = std::numeric_limits<double>::quiet_NaN();
    if (opts.positivity_every > 0 && sample_index % opts.positivity_every == 0) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
      min_ev = es.eigenvalues().minCoeff();
      if (min_ev < -opts.positivity_slack) {
        throw EvolutionError("density matrix lost positivity: eigenvalue " + std::to_string(min_ev) +
                                 " at t = " + std::to_string(t),
                             t, min_ev);
      }
    }
    out.min_eigenvalue.push_back(min_ev);
    ++sample_index;
  };

  record(0.0);
  CMatrix k1, k2, k3, k4, tmp, x;
  const int samples = sample_count(opts.t_final, opts.sample_interval);
  double t = 0.0;
  for (int j = 1; j < samples; ++j) {
    double t_next = std::min(j * opts.sample_interval, opts.t_final);
    double span = t_next - t;
    int steps = std::max(1, static_cast<int>(std::ceil(span / opts.dt - 1e-9)));
    double dt = span / steps;
    for (int s = 0; s < steps; ++s) {
      rhs_into(h, kappa, rho, x, k1);
      tmp = rho + (0.5 * dt) * k1;
      rhs_into(h, kappa, tmp, x, k2);
      tmp = rho + (0.5 * dt) * k2;
      rhs_into(h, kappa, tmp, x, k3);
      tmp = rho + dt * k3;
      rhs_into(h, kappa, tmp, x, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t = t_next;
    record(t);
  }
  out.final_state.rho = std::move(rho);
  return out;
}

void write_master_csv(std::ostream& out, const MasterTrajectory& traj) {
  out << "t,P_g,trace,min_eigenvalue,mean_n\n" << std::setprecision(12);
  for (std::size_t j = 0; j < traj.t.size(); ++j) {
    out << traj.t[j] << ',' << traj.p_ground[j] << ',' << traj.trace[j] << ',' << traj.min_eigenvalue[j]
        << ',' << traj.mean_n[j] << '\n';
  }
}

}  // namespace icebox

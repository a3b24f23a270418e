// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "icebox/spin_glass.hpp"
#include "icebox/types.hpp"

namespace icebox {

struct BathSpec {
  int n_max = 8;
  double omega = 1.0;
};

struct CouplingSpec {
  double lambda = 0.2;
};

inline int default_n_max(int n_spins) { return n_spins + 4; }
// Next truncation level to try after the top Fock level filled up.
inline int grown_n_max(int n_max) { return n_max + (n_max / 2 > 4 ? n_max / 2 : 4); }

// Real symmetric sparse matrix on the spin (x) Fock space. The composite
// index of |k, n> is k * (n_max + 1) + n. In this basis every entry of the
// total Hamiltonian is real, so the storage is real.
class SparseHamiltonian {
 public:
  SparseHamiltonian() = default;
  SparseHamiltonian(RSparse matrix, int system_dim, int n_max);

  Eigen::Index dimension() const { return matrix_.rows(); }
  int system_dim() const { return system_dim_; }
  int n_max() const { return n_max_; }
  int fock_dim() const { return n_max_ + 1; }
  const RSparse& matrix() const { return matrix_; }

  Eigen::Index index(Eigen::Index k, int n) const { return k * (n_max_ + 1) + n; }

  // y = H x
  void apply(const CVector& x, CVector& y) const;
  CVector apply(const CVector& x) const;
  double expectation(const CVector& x) const;

  // Gershgorin interval enclosing the spectrum.
  void spectral_bounds(double& lo, double& hi) const;

  // Largest |H_ij - H_ji|.
  double asymmetry() const;

 private:
  RSparse matrix_;
  int system_dim_ = 0;
  int n_max_ = 0;
};

// H = H_s + omega (n + 1/2) + lambda (b^dag - b) sum_m (sigma+_m - sigma-_m).
SparseHamiltonian build_total(const SpinGlass& sg, const BathSpec& bath,
                              const CouplingSpec& cpl);

// Generic system (x) oscillator Hamiltonian
//   H = H_sys (x) 1 + 1 (x) omega (n + 1/2) + g X (x) (b^dag - b)
// X must be real antisymmetric so that the coupling term is real symmetric.
SparseHamiltonian build_composite(const RSparse& h_sys, const RSparse& x_sys,
                                  double g, const BathSpec& bath);

// Parity phase exp(i pi (n + sum_m s_m / 2)) of |k, n>.
Complex parity_of(Config k, int n, int n_spins);

}  // namespace icebox

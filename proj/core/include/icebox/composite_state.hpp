// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "icebox/hamiltonian.hpp"
#include "icebox/types.hpp"

namespace icebox {

struct CompositeState {
  CVector amplitudes;
  int n_spins = 0;
  int n_max = 0;

  Eigen::Index fock_dim() const { return n_max + 1; }
  Eigen::Index system_dim() const { return amplitudes.size() / fock_dim(); }
  Eigen::Index index(Eigen::Index k, int n) const { return k * fock_dim() + n; }
  double norm() const { return amplitudes.norm(); }
  // Amplitudes viewed as a (n_max + 1) x system_dim matrix: column k holds
  // the Fock amplitudes of configuration k.
  Eigen::Map<const CMatrix> as_matrix() const {
    return {amplitudes.data(), fock_dim(), system_dim()};
  }
};

// |config> (x) |n = 0>. Warns when config is not a strict local minimum.
CompositeState initial_state(const SpinGlass& sg, Config config, const BathSpec& bath);
CompositeState initial_state(const SpinGlass& sg, std::string_view config,
                             const BathSpec& bath);

// Spin state (length 2^n_s) tensored with the bath vacuum.
CompositeState embed_spin_state(const CVector& spin_state, int n_spins, const BathSpec& bath);

}  // namespace icebox

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/composite_state.hpp"

#include "icebox/error.hpp"

namespace icebox {

CompositeState initial_state(const SpinGlass& sg, Config config, const BathSpec& bath) {
  if (bath.n_max < 1) throw ConfigError("n_max must be at least 1");
  if (config >= sg.n_configs()) throw InputError("configuration index out of range");
  if (!is_strict_local_minimum(sg, config)) {
    warn("initial configuration " + format_config(config, sg.n_spins()) +
         " is not a strict local minimum");
  }
  CompositeState psi;
  psi.n_spins = sg.n_spins();
  psi.n_max = bath.n_max;
  psi.amplitudes = CVector::Zero(static_cast<Eigen::Index>(sg.n_configs()) * (bath.n_max + 1));
  psi.amplitudes(psi.index(static_cast<Eigen::Index>(config), 0)) = 1.0;
  return psi;
}

CompositeState initial_state(const SpinGlass& sg, std::string_view config, const BathSpec& bath) {
  return initial_state(sg, parse_config(config, sg.n_spins()), bath);
}

CompositeState embed_spin_state(const CVector& spin_state, int n_spins, const BathSpec& bath) {
  if (bath.n_max < 1) throw ConfigError("n_max must be at least 1");
  if (spin_state.size() != (Eigen::Index{1} << n_spins)) {
    throw InputError("spin state length does not match qubit count");
  }
  CompositeState psi;
  psi.n_spins = n_spins;
  psi.n_max = bath.n_max;
  psi.amplitudes = CVector::Zero(spin_state.size() * (bath.n_max + 1));
  for (Eigen::Index k = 0; k < spin_state.size(); ++k) psi.amplitudes(psi.index(k, 0)) = spin_state(k);
  return psi;
}

}  // namespace icebox

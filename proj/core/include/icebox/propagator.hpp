// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "icebox/hamiltonian.hpp"
#include "icebox/types.hpp"

namespace icebox {

enum class Integrator {
  // Fixed-step classical Runge-Kutta, no renormalisation.
  kRk4,
  // Chebyshev expansion of exp(-iH dt) over each sample interval.
  kChebyshev,
};

struct PropagationOptions {
  double t_final = 15.0;
  double dt = 0.005;
  double sample_interval = 0.05;
  Integrator integrator = Integrator::kRk4;
};

// Called at t = 0 and after each sample interval with the current state.
using SampleCallback = std::function<void(double t, const CVector& psi)>;

// Integrates i dpsi/dt = H psi. The state passed to the callback always
// carries the physical global phase.
CVector propagate(const SparseHamiltonian& h, const CVector& psi0,
                  const PropagationOptions& opts, const SampleCallback& on_sample);

// One RK4 step of i dpsi/dt = (H - shift) psi, in place.
void rk4_step(const SparseHamiltonian& h, double shift, double dt, CVector& psi,
              CVector* scratch = nullptr);

// Sample times 0, s, 2s, ... up to t_final (inclusive within rounding).
int sample_count(double t_final, double sample_interval);

}  // namespace icebox

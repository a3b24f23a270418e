// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace icebox {

double bessel_j0(double x);
double bessel_j1(double x);

// f(x) = 1 - J0(x)
double relaxation_model(double x);

struct RelaxationFit {
  double p_r = 0.0;
  double tau = 0.0;
  double residual = 0.0;  // RMS
  int iterations = 0;
  // Heuristic: slope over the last tenth of the trace is below 1% of the peak.
  bool saturated = false;
};

// Least squares of P(t) ~ p_r (1 - J0(t / tau)); coarse grid over tau with
// closed-form p_r, then Gauss-Newton with step halving.
RelaxationFit fit_relaxation(const std::vector<double>& t, const std::vector<double>& p);

// tau / (p_r - 1 / n_states); throws WildGuessError when p_r <= 1 / n_states.
double average_running_time(const RelaxationFit& fit, double n_states);

}  // namespace icebox

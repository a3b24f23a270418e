// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "icebox/types.hpp"

namespace icebox {

// Population of |2> = |up, 0> for the three-level cascade
// |2> <-> |1> = |down, 1> -> |0> = |down, 0> starting from rho22 = 1.
// Continuous across lambda = kappa / 2 (trig -> hyperbolic).
double three_level_analytic(double lambda, double kappa, double t);

// Overdamped limit exp(-2 lambda^2 t / kappa).
double three_level_overdamped(double lambda, double kappa, double t);

// Early-time series 1 - rho22 ~ lambda^2 t^2 - kappa lambda^2 t^3 / 3.
double three_level_early_time(double lambda, double kappa, double t);

struct ThreeLevelTrajectory {
  std::vector<double> t;
  std::vector<double> rho22;
  std::vector<double> rho11;
  std::vector<double> rho00;
  std::vector<Complex> rho12;
};

// RK4 integration of the four coupled rotating-frame equations.
ThreeLevelTrajectory three_level_numeric(double lambda, double kappa, double t_final,
                                         double dt = 0.001, double sample_interval = 0.05);

}  // namespace icebox

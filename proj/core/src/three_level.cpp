// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/three_level.hpp"

#include <algorithm>
#include <cmath>

#include "icebox/error.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

namespace {

// c = cos(W t), s = sin(W t) / W for W^2 = w2 of either sign.
void generalized_trig(double w2, double t, double& c, double& s) {
  if (w2 > 0.0) {
    double w = std::sqrt(w2);
    c = std::cos(w * t);
    s = w * t > 1e-6 ? std::sin(w * t) / w : t * (1.0 - w2 * t * t / 6.0);
  } else {
    double g = std::sqrt(-w2);
    c = std::cosh(g * t);
    s = g * t > 1e-6 ? std::sinh(g * t) / g : t * (1.0 - w2 * t * t / 6.0);
  }
}

}  // namespace

double three_level_analytic(double lambda, double kappa, double t) {
  if (lambda < 0.0 || kappa < 0.0) throw ConfigError("lambda and kappa must be non-negative");
  const double w2 = lambda * lambda - 0.25 * kappa * kappa;
  double c1 = 0.0, s1 = 0.0, c2 = 0.0, s2 = 0.0;
  generalized_trig(w2, t, c1, s1);
  generalized_trig(4.0 * w2, t, c2, s2);
  // s2 = sin(2 W t) / (2 W)
  return std::exp(-kappa * t) * (c2 + lambda * lambda * s1 * s1 + kappa * s2);
}

double three_level_overdamped(double lambda, double kappa, double t) {
  if (kappa <= 0.0) throw ConfigError("overdamped limit needs kappa > 0");
  return std::exp(-2.0 * lambda * lambda * t / kappa);
}

double three_level_early_time(double lambda, double kappa, double t) {
  return lambda * lambda * t * t - kappa * lambda * lambda * t * t * t / 3.0;
}

ThreeLevelTrajectory three_level_numeric(double lambda, double kappa, double t_final, double dt,
                                         double sample_interval) {
  if (lambda < 0.0 || kappa < 0.0) throw ConfigError("lambda and kappa must be non-negative");
  struct State {
    double r22, r11, r00;
    Complex r12;
  };
  const Complex i{0.0, 1.0};
  auto f = [&](const State& s) {
    Complex flow = i * s.r12 - i * std::conj(s.r12);
    State d;
    d.r22 = (lambda * flow).real();
    d.r12 = lambda * (i * s.r22 - i * s.r11) - kappa * s.r12;
    d.r11 = -(lambda * flow).real() - 2.0 * kappa * s.r11;
    d.r00 = 2.0 * kappa * s.r11;
    return d;
  };
  auto axpy = [](const State& a, double h, const State& b) {
    return State{a.r22 + h * b.r22, a.r11 + h * b.r11, a.r00 + h * b.r00, a.r12 + h * b.r12};
  };
  State s{1.0, 0.0, 0.0, {0.0, 0.0}};
  ThreeLevelTrajectory out;
  auto record = [&](double t) {
    out.t.push_back(t);
    out.rho22.push_back(s.r22);
    out.rho11.push_back(s.r11);
    out.rho00.push_back(s.r00);
    out.rho12.push_back(s.r12);
  };
  record(0.0);
  const int samples = sample_count(t_final, sample_interval);
  double t = 0.0;
  for (int j = 1; j < samples; ++j) {
    double t_next = std::min(j * sample_interval, t_final);
    int steps = std::max(1, static_cast<int>(std::ceil((t_next - t) / dt - 1e-9)));
    double h = (t_next - t) / steps;
    for (int n = 0; n < steps; ++n) {
      State k1 = f(s);
      State k2 = f(axpy(s, 0.5 * h, k1));
      State k3 = f(axpy(s, 0.5 * h, k2));
      State k4 = f(axpy(s, h, k3));
      s.r22 += h / 6.0 * (k1.r22 + 2.0 * k2.r22 + 2.0 * k3.r22 + k4.r22);
      s.r11 += h / 6.0 * (k1.r11 + 2.0 * k2.r11 + 2.0 * k3.r11 + k4.r11);
      s.r00 += h / 6.0 * (k1.r00 + 2.0 * k2.r00 + 2.0 * k3.r00 + k4.r00);
      s.r12 += h / 6.0 * (k1.r12 + 2.0 * k2.r12 + 2.0 * k3.r12 + k4.r12);
    }
    t = t_next;
    record(t);
  }
  return out;
}

}  // namespace icebox

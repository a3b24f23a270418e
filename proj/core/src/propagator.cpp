// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/propagator.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "icebox/error.hpp"

namespace icebox {

int sample_count(double t_final, double sample_interval) {
  return static_cast<int>(std::ceil(t_final / sample_interval - 1e-9)) + 1;
}

void rk4_step(const SparseHamiltonian& h, double shift, double dt, CVector& psi, CVector* scratch) {
  // scratch[0..2]: stage vector, stage derivative, accumulator
  CVector local[3];
  CVector* s = scratch ? scratch : local;
  CVector& stage = s[0];
  CVector& k = s[1];
  CVector& acc = s[2];
  const Complex mi{0.0, -1.0};
  auto deriv = [&](const CVector& x, CVector& out) {
    h.apply(x, out);
    if (shift != 0.0) out.noalias() -= shift * x;
    out *= mi;
  };
  deriv(psi, k);
  acc = k;
  stage = psi + (0.5 * dt) * k;
  deriv(stage, k);
  acc += 2.0 * k;
  stage = psi + (0.5 * dt) * k;
  deriv(stage, k);
  acc += 2.0 * k;
  stage = psi + dt * k;
  deriv(stage, k);
  acc += k;
  psi += (dt / 6.0) * acc;
}

namespace {

// exp(-i H tau) psi by Chebyshev expansion on the Gershgorin interval.
class ChebyshevStepper {
 public:
  explicit ChebyshevStepper(const SparseHamiltonian& h) : h_(h) {
    double lo = 0.0, hi = 0.0;
    h.spectral_bounds(lo, hi);
    center_ = 0.5 * (hi + lo);
    radius_ = 0.5 * (hi - lo) * 1.01 + 1e-12;
  }

  void step(double tau, CVector& psi) {
    const auto& coeffs = coefficients(tau);
    t_prev_ = psi;
    apply_scaled(t_prev_, t_cur_);
    acc_ = coeffs[0] * t_prev_ + coeffs[1] * t_cur_;
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
      apply_scaled(t_cur_, t_next_);
      t_next_ = 2.0 * t_next_ - t_prev_;
      acc_ += coeffs[k] * t_next_;
      t_prev_.swap(t_cur_);
      t_cur_.swap(t_next_);
    }
    psi = std::exp(Complex(0.0, -center_ * tau)) * acc_;
  }

 private:
  void apply_scaled(const CVector& x, CVector& y) {
    h_.apply(x, y);
    y = (y - center_ * x) / radius_;
  }

  const std::vector<Complex>& coefficients(double tau) {
    auto it = cache_.find(tau);
    if (it != cache_.end()) return it->second;
    const double x = radius_ * tau;
    std::vector<Complex> c;
    static const Complex kPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int k = 0;; ++k) {
      double jk = std::cyl_bessel_j(static_cast<double>(k), x);
      c.push_back((k == 0 ? 1.0 : 2.0) * jk * kPow[k % 4]);
      if (k > x + 10 && std::fabs(jk) < 1e-17) break;
      if (k > 100000) throw ConvergenceError("Chebyshev expansion did not converge");
    }
    if (c.size() < 2) c.push_back(0.0);
    return cache_.emplace(tau, std::move(c)).first->second;
  }

  const SparseHamiltonian& h_;
  double center_ = 0.0;
  double radius_ = 1.0;
  std::map<double, std::vector<Complex>> cache_;
  CVector t_prev_, t_cur_, t_next_, acc_;
};

}  // namespace

CVector propagate(const SparseHamiltonian& h, const CVector& psi0, const PropagationOptions& opts,
                  const SampleCallback& on_sample) {
  if (psi0.size() != h.dimension()) throw InputError("state and Hamiltonian dimensions differ");
  if (!(opts.dt > 0.0) || !(opts.sample_interval > 0.0) || opts.t_final < 0.0) {
    throw ConfigError("time step, sample interval and final time must be positive");
  }
  const int samples = sample_count(opts.t_final, opts.sample_interval);
  CVector psi = psi0;
  if (on_sample) on_sample(0.0, psi);

  if (opts.integrator == Integrator::kChebyshev) {
    ChebyshevStepper cheb(h);
    double t = 0.0;
    for (int j = 1; j < samples; ++j) {
      double t_next = std::min(j * opts.sample_interval, opts.t_final);
      cheb.step(t_next - t, psi);
      t = t_next;
      if (on_sample) on_sample(t, psi);
    }
    return psi;
  }

  // RK4 on H - <H>_0 keeps the amplitude oscillation slow; the dropped phase
  // is restored whenever the state leaves this function.
  const double shift = h.expectation(psi0) / std::max(psi0.squaredNorm(), 1e-300);
  CVector scratch[3];
  CVector out;
  double t = 0.0;
  for (int j = 1; j < samples; ++j) {
    double t_next = std::min(j * opts.sample_interval, opts.t_final);
    double span = t_next - t;
    int steps = std::max(1, static_cast<int>(std::ceil(span / opts.dt - 1e-9)));
    double dt = span / steps;
    for (int s = 0; s < steps; ++s) rk4_step(h, shift, dt, psi, scratch);
    t = t_next;
    if (on_sample) {
      out = std::exp(Complex(0.0, -shift * t)) * psi;
      on_sample(t, out);
    }
  }
  return std::exp(Complex(0.0, -shift * t)) * psi;
}

}  // namespace icebox

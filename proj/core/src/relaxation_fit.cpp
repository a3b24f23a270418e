// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/relaxation_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "icebox/error.hpp"
#include "icebox/stats.hpp"

namespace icebox {

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::fabs(x)); }

double bessel_j1(double x) {
  double v = std::cyl_bessel_j(1.0, std::fabs(x));
  return x < 0.0 ? -v : v;
}

double relaxation_model(double x) { return 1.0 - bessel_j0(x); }

namespace {

struct Eval {
  double p_r = 0.0;
  double sse = 0.0;
};

// Best amplitude for fixed tau is linear least squares.
Eval at_tau(const std::vector<double>& t, const std::vector<double>& p, double tau) {
  double sff = 0.0, spf = 0.0, spp = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double f = relaxation_model(t[i] / tau);
    sff += f * f;
    spf += p[i] * f;
    spp += p[i] * p[i];
  }
  Eval e;
  e.p_r = sff > 0.0 ? spf / sff : 0.0;
  e.sse = std::max(spp - e.p_r * spf, 0.0);
  return e;
}

double sse(const std::vector<double>& t, const std::vector<double>& p, double p_r, double tau) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double r = p_r * relaxation_model(t[i] / tau) - p[i];
    s += r * r;
  }
  return s;
}

bool saturation_heuristic(const std::vector<double>& t, const std::vector<double>& p) {
  const std::size_t n = t.size();
  const std::size_t w = std::max<std::size_t>(3, n / 10);
  if (n < 2 * w) return false;
  auto window_slope = [&](std::size_t start) {
    std::vector<double> x(t.begin() + start, t.begin() + start + w);
    std::vector<double> y(p.begin() + start, p.begin() + start + w);
    return linear_fit(x, y).slope;
  };
  double peak = 0.0;
  for (std::size_t s = 0; s + w <= n; ++s) peak = std::max(peak, std::fabs(window_slope(s)));
  return peak > 0.0 && std::fabs(window_slope(n - w)) < 0.01 * peak;
}

}  // namespace

RelaxationFit fit_relaxation(const std::vector<double>& t, const std::vector<double>& p) {
  if (t.size() != p.size() || t.size() < 3) throw FitError("relaxation fit needs at least 3 samples");
  const double t_max = *std::max_element(t.begin(), t.end());
  if (!(t_max > 0.0)) throw FitError("relaxation fit needs positive times");

  // Coarse log grid of tau relative to the trace length.
  double best_tau = 0.0;
  Eval best{0.0, std::numeric_limits<double>::infinity()};
  const int grid = 400;
  for (int g = 0; g < grid; ++g) {
    double tau = t_max * std::pow(10.0, -3.0 + 4.0 * g / (grid - 1));
    Eval e = at_tau(t, p, tau);
    if (e.sse < best.sse) {
      best = e;
      best_tau = tau;
    }
  }

  // Levenberg-Marquardt on (p_r, log tau).
  double pr = best.p_r, lt = std::log(best_tau);
  double cur = sse(t, p, pr, std::exp(lt));
  double mu = 1e-3;
  int it = 0;
  bool converged = false;
  for (; it < 500; ++it) {
    const double tau = std::exp(lt);
    double a11 = 0.0, a12 = 0.0, a22 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      double x = t[i] / tau;
      double f = relaxation_model(x);
      double r = pr * f - p[i];
      double j1 = f;
      double j2 = -pr * bessel_j1(x) * x;  // d/d(log tau)
      a11 += j1 * j1;
      a12 += j1 * j2;
      a22 += j2 * j2;
      g1 += j1 * r;
      g2 += j2 * r;
    }
    bool improved = false;
    for (int tries = 0; tries < 60; ++tries) {
      double b11 = a11 * (1.0 + mu), b22 = a22 * (1.0 + mu);
      double det = b11 * b22 - a12 * a12;
      if (!(std::fabs(det) > 0.0)) {
        mu *= 10.0;
        continue;
      }
      double d1 = -(b22 * g1 - a12 * g2) / det;
      double d2 = -(b11 * g2 - a12 * g1) / det;
      double trial = sse(t, p, pr + d1, std::exp(lt + d2));
      if (trial <= cur) {
        bool tiny = std::fabs(d1) <= 1e-14 * std::max(1.0, std::fabs(pr)) && std::fabs(d2) <= 1e-14;
        pr += d1;
        lt += d2;
        cur = trial;
        mu = std::max(mu * 0.3, 1e-12);
        improved = true;
        if (tiny) converged = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) {
      // No descent direction left: at a minimum to machine precision.
      converged = true;
    }
    if (converged) break;
  }
  if (!converged) {
    throw FitError("relaxation fit did not converge after " + std::to_string(it) +
                   " iterations; grid optimum p_r = " + std::to_string(best.p_r) +
                   ", tau = " + std::to_string(best_tau));
  }
  RelaxationFit fit;
  fit.p_r = pr;
  fit.tau = std::exp(lt);
  fit.residual = std::sqrt(cur / static_cast<double>(t.size()));
  fit.iterations = it + 1;
  fit.saturated = saturation_heuristic(t, p);
  if (!(fit.p_r > 0.0)) throw FitError("fitted success rate is not positive");
  return fit;
}

double average_running_time(const RelaxationFit& fit, double n_states) {
  if (!(n_states > 0.0)) throw InputError("state count must be positive");
  const double background = 1.0 / n_states;
  if (fit.p_r <= background) {
    throw WildGuessError("success rate " + std::to_string(fit.p_r) +
                         " does not beat a random guess (1/N_s = " + std::to_string(background) + ")");
  }
  return fit.tau / (fit.p_r - background);
}

}  // namespace icebox

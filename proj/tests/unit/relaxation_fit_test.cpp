// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "icebox/error.hpp"
#include "icebox/relaxation_fit.hpp"
#include "oracle.hpp"

namespace icebox {
namespace {

std::vector<double> times(int n, double dt) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = i * dt;
  return t;
}

TEST(Bessel, MatchesSeriesOracle) {
  for (double x = 0.0; x <= 40.0; x += 0.37) {
    EXPECT_NEAR(bessel_j0(x), oracle::bessel_j(0, x), 1e-10) << x;
    EXPECT_NEAR(bessel_j1(x), oracle::bessel_j(1, x), 1e-10) << x;
  }
  EXPECT_EQ(bessel_j0(-2.5), bessel_j0(2.5));
  EXPECT_EQ(bessel_j1(-2.5), -bessel_j1(2.5));
  EXPECT_EQ(relaxation_model(0.0), 0.0);
}

TEST(Bessel, KnownValuesAndDerivative) {
  EXPECT_EQ(bessel_j0(0.0), 1.0);
  // first zero, located on the oracle series by bisection
  double a = 2.0, b = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (oracle::bessel_j(0, m) > 0.0 ? a : b) = m;
  }
  EXPECT_NEAR(a, 2.404825557695773, 1e-12);
  EXPECT_NEAR(bessel_j0(2.404825557695773), 0.0, 1e-12);
  EXPECT_NEAR(bessel_j0(1.0), 0.7651976865579666, 1e-12);
  const double h = 1e-5;
  for (double x : {0.5, 3.0, 11.0, 27.0}) {
    EXPECT_NEAR((bessel_j0(x + h) - bessel_j0(x - h)) / (2.0 * h), -bessel_j1(x), 1e-6);
  }
}

TEST(Fit, NoiselessRoundTrip) {
  for (auto [pr, tau] : {std::pair{0.6, 3.0}, {0.25, 8.0}, {0.9, 1.2}, {0.05, 20.0}}) {
    auto t = times(201, 0.25);
    std::vector<double> p;
    for (double x : t) p.push_back(pr * relaxation_model(x / tau));
    auto fit = fit_relaxation(t, p);
    EXPECT_NEAR(fit.p_r / pr, 1.0, 1e-6);
    EXPECT_NEAR(fit.tau / tau, 1.0, 1e-6);
    EXPECT_LT(fit.residual, 1e-8);
  }
}

TEST(Fit, NoisyRoundTrip) {
  const double pr = 0.4, tau = 5.0;
  auto t = times(201, 0.25);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> noise(0.0, 0.01 * pr);
  std::vector<double> p;
  for (double x : t) p.push_back(pr * relaxation_model(x / tau) + noise(rng));
  auto fit = fit_relaxation(t, p);
  EXPECT_NEAR(fit.p_r / pr, 1.0, 0.05);
  EXPECT_NEAR(fit.tau / tau, 1.0, 0.05);
  EXPECT_NEAR(fit.residual, 0.01 * pr, 0.002);
}

TEST(Fit, ScaleConsistent) {
  const double pr = 0.7, tau = 4.0;
  auto t = times(161, 0.25);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.005);
  std::vector<double> p;
  for (double x : t) p.push_back(pr * relaxation_model(x / tau) + noise(rng));
  auto base = fit_relaxation(t, p);
  std::vector<double> t2, p2;
  for (double x : t) t2.push_back(2.5 * x);
  for (double v : p) p2.push_back(0.5 * v);
  auto stretched = fit_relaxation(t2, p);
  auto scaled = fit_relaxation(t, p2);
  EXPECT_NEAR(stretched.tau / base.tau, 2.5, 1e-8);
  EXPECT_NEAR(stretched.p_r / base.p_r, 1.0, 1e-8);
  EXPECT_NEAR(scaled.p_r / base.p_r, 0.5, 1e-8);
  EXPECT_NEAR(scaled.tau / base.tau, 1.0, 1e-8);
}

TEST(Fit, SaturationHeuristic) {
  // Slow growth with no plateau is not saturated; a long flat tail is.
  auto t = times(201, 0.25);
  std::vector<double> rising, flat;
  for (double x : t) {
    rising.push_back(0.5 * relaxation_model(x / 40.0));
    flat.push_back(0.5 * (1.0 - std::exp(-x)));
  }
  EXPECT_FALSE(fit_relaxation(t, rising).saturated);
  EXPECT_TRUE(fit_relaxation(t, flat).saturated);
}

TEST(Fit, RejectsDegenerateInput) {
  EXPECT_THROW(fit_relaxation({0.0, 1.0}, {0.0, 0.1}), FitError);
  EXPECT_THROW(fit_relaxation({0.0, 1.0, 2.0}, {0.0, 0.1}), FitError);
  EXPECT_THROW(fit_relaxation({0.0, 0.0, 0.0}, {0.0, 0.1, 0.2}), FitError);
  EXPECT_THROW(fit_relaxation(times(20, 0.5), std::vector<double>(20, 0.0)), FitError);
}

TEST(RunningTime, SubtractsRandomGuess) {
  RelaxationFit fit;
  fit.p_r = 0.5;
  fit.tau = 3.0;
  EXPECT_DOUBLE_EQ(average_running_time(fit, 4.0), 3.0 / 0.25);
  EXPECT_DOUBLE_EQ(average_running_time(fit, 1024.0), 3.0 / (0.5 - 1.0 / 1024.0));
  fit.p_r = 0.25;
  EXPECT_THROW(average_running_time(fit, 4.0), WildGuessError);
  fit.p_r = 0.01;
  EXPECT_THROW(average_running_time(fit, 32.0), WildGuessError);
  EXPECT_THROW(average_running_time(fit, 0.0), InputError);
  fit.p_r = 0.8;
  EXPECT_NEAR(average_running_time(fit, 2048.0), 3.0 / (0.8 - 1.0 / 2048.0), 1e-14);
  EXPECT_NEAR(average_running_time(fit, 2048.0), 3.7522902161964087, 1e-12);
  fit.p_r = 1.0;
  EXPECT_NEAR(average_running_time(fit, std::ldexp(1.0, 40)), 3.0, 1e-11);
}

}  // namespace
}  // namespace icebox

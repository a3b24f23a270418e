// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "icebox/classical_bath.hpp"
#include "icebox/error.hpp"
#include "icebox/hybrid.hpp"
#include "icebox/instance.hpp"
#include "icebox/parallel.hpp"
#include "icebox/stats.hpp"
#include "oracle.hpp"

namespace icebox {
namespace {

// Stacked state for the oracle: spin amplitudes followed by q and phi as two
// extra (real) entries.
oracle::CVec stack(const CVector& psi, double q, double phi) {
  oracle::CVec y(psi.size() + 2);
  y.head(psi.size()) = psi;
  y(psi.size()) = q;
  y(psi.size() + 1) = phi;
  return y;
}

// Mean-field equations written from the definitions with dense Pauli
// matrices.
oracle::Rhs mean_field(const SpinGlass& sg, double lambda) {
  const int n = sg.n_spins();
  const int ds = 1 << n;
  Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(ds, ds);
  Eigen::Matrix2cd y1;
  y1 << 0.0, oracle::Complex(0.0, -1.0), oracle::Complex(0.0, 1.0), 0.0;
  for (int m = 0; m < n; ++m) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
      Eigen::MatrixXcd f = q == m ? Eigen::MatrixXcd(y1) : Eigen::MatrixXcd::Identity(2, 2);
      Eigen::MatrixXcd next(op.rows() * 2, op.cols() * 2);
      for (int i = 0; i < op.rows(); ++i)
        for (int j = 0; j < op.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = op(i, j) * f;
      op = next;
    }
    sy += op;
  }
  Eigen::VectorXd e(ds);
  for (int k = 0; k < ds; ++k) e(k) = sg.energy(static_cast<Config>(k));
  return [=](double, const oracle::CVec& y) {
    oracle::CVec psi = y.head(ds);
    const double q = y(ds).real(), phi = y(ds + 1).real();
    oracle::CVec d(ds + 2);
    d.head(ds) = oracle::Complex(0.0, -1.0) * (e.cwiseProduct(psi) + 2.0 * lambda * q * (sy * psi));
    d(ds) = -phi;
    d(ds + 1) = q + lambda * psi.dot(sy * psi).real();
    return d;
  };
}

TEST(SigmaY, MatchesDefinition) {
  CVector psi = CVector::Random(8);
  CVector out = apply_sigma_y_sum(psi, 3);
  // sigma_y acting on qubit 1 of |up,up,up> (k = 0) gives i|k = 2>
  CVector e0 = CVector::Zero(8);
  e0(0) = 1.0;
  CVector r = apply_sigma_y_sum(e0, 3);
  EXPECT_EQ(r(1), Complex(0.0, 1.0));
  EXPECT_EQ(r(2), Complex(0.0, 1.0));
  EXPECT_EQ(r(4), Complex(0.0, 1.0));
  // Hermitian: <a|S b> = <S a|b>
  CVector a = CVector::Random(8);
  EXPECT_NEAR(std::abs(a.dot(out) - apply_sigma_y_sum(a, 3).dot(psi)), 0.0, 1e-14);
}

TEST(Semiclassical, FixedPointOfAlignedSpins) {
  auto inst = generate_instance(4, 1);
  ObservableSet obs(inst.spin_glass, 0);
  SemiclassicalOptions so;
  so.t_final = 20.0;
  auto tr = evolve_semiclassical(inst.spin_glass, 0.3, spin_basis_state(0, 4), {0.0, 0.0}, obs, so);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    EXPECT_LT(std::fabs(tr.q[i]), 1e-10);
    EXPECT_LT(std::fabs(tr.phi[i]), 1e-10);
  }
  EXPECT_NEAR(std::norm(tr.final_spin_state(0)), 1.0, 1e-10);
}

TEST(Semiclassical, DecoupledBathOrbitsFreely) {
  auto inst = generate_instance(4, 1);
  ObservableSet obs(inst.spin_glass, 0);
  SemiclassicalOptions so;
  so.t_final = 6.0;
  so.sample_interval = 0.5;
  auto tr = evolve_semiclassical(inst.spin_glass, 0.0, spin_basis_state(0, 4), {0.7, -0.2}, obs, so);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const double t = tr.t[i];
    EXPECT_NEAR(tr.q[i], 0.7 * std::cos(t) + 0.2 * std::sin(t), 1e-9);
    EXPECT_NEAR(tr.phi[i], 0.7 * std::sin(t) - 0.2 * std::cos(t), 1e-9);
    EXPECT_EQ(tr.p_ground[i], 0.0);
  }
}

TEST(Semiclassical, MatchesAdaptiveOracle) {
  auto inst = build_two_minima_instance(4, 2);
  const auto& sg = inst.spin_glass;
  const double lambda = 0.35;
  ObservableSet obs(sg, inst.initial_config);
  SemiclassicalOptions so;
  so.t_final = 10.0;
  so.dt = 0.002;
  so.sample_interval = 10.0;
  CVector psi0 = spin_basis_state(inst.initial_config, 4);
  auto tr = evolve_semiclassical(sg, lambda, psi0, {0.4, -0.3}, obs, so);
  auto ref = oracle::dopri5(mean_field(sg, lambda), stack(psi0, 0.4, -0.3), 0.0, 10.0);
  const int ds = 16;
  // The library integrates with a shifted diagonal; compare phase-free data.
  EXPECT_NEAR(tr.q.back(), ref(ds).real(), 1e-8);
  EXPECT_NEAR(tr.phi.back(), ref(ds + 1).real(), 1e-8);
  const oracle::Complex overlap = ref.head(ds).dot(tr.final_spin_state);
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-8);
  EXPECT_LT((tr.final_spin_state.cwiseAbs2() - ref.head(ds).cwiseAbs2()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Semiclassical, ConservesNormAndEnergy) {
  auto inst = generate_instance(5, 4);
  ObservableSet obs(inst.spin_glass, 0);
  SemiclassicalOptions so;
  so.t_final = 30.0;
  so.dt = 0.0025;
  auto tr = evolve_semiclassical(inst.spin_glass, 0.4, spin_basis_state(0, 5), {0.5, 0.5}, obs, so);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    EXPECT_NEAR(tr.norm[i], 1.0, 1e-9);
    EXPECT_NEAR(tr.energy[i], tr.energy[0], 1e-8 * std::fabs(tr.energy[0]));
  }
}

TEST(InitialEnsemble, GaussianWithHalfVariance) {
  auto rng = make_stream(7);
  std::vector<double> q, phi;
  for (int i = 0; i < 40000; ++i) {
    auto s = sample_initial(rng);
    q.push_back(s.q);
    phi.push_back(s.phi);
  }
  EXPECT_NEAR(mean(q), 0.0, 0.015);
  EXPECT_NEAR(mean(phi), 0.0, 0.015);
  EXPECT_NEAR(sample_stddev(q) * sample_stddev(q), 0.5, 0.015);
  EXPECT_NEAR(sample_stddev(phi) * sample_stddev(phi), 0.5, 0.015);
}

TEST(Ensemble, DeterministicAcrossWorkerCounts) {
  auto inst = build_two_minima_instance(5, 3);
  ObservableSet obs(inst.spin_glass, inst.initial_config);
  SemiclassicalOptions so;
  so.t_final = 3.0;
  so.sample_interval = 0.5;
  EnsembleOptions ens;
  ens.samples = 24;
  ens.seed = 99;
  ens.workers = 1;
  auto a = ensemble_average(inst.spin_glass, 0.2, spin_basis_state(inst.initial_config, 5), obs, so, ens);
  ens.workers = 3;
  auto b = ensemble_average(inst.spin_glass, 0.2, spin_basis_state(inst.initial_config, 5), obs, so, ens);
  std::ostringstream sa, sb;
  write_ensemble_csv(sa, a, 5);
  write_ensemble_csv(sb, b, 5);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.samples, 24);
  EXPECT_EQ(a.aborts, 0);
  EXPECT_NE(sa.str().find("stderr_P_g"), std::string::npos);
  EXPECT_NE(ensemble_metadata_json(a).find("\"M\""), std::string::npos);
}

}  // namespace
}  // namespace icebox

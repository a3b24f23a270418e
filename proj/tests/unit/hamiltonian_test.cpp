// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "icebox/error.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/instance.hpp"
#include "oracle.hpp"

namespace icebox {
namespace {

std::vector<double> fields(const SpinGlass& sg) {
  std::vector<double> h;
  for (auto j : sg.on_site()) h.push_back(j.value());
  return h;
}

std::vector<oracle::Coupling> couplings(const SpinGlass& sg) {
  std::vector<oracle::Coupling> e;
  for (const auto& x : sg.edges()) e.push_back({x.a, x.b, x.j.value()});
  return e;
}

TEST(BuildTotal, DecoupledSpectrum) {
  auto sg = generate_instance(4, 2).spin_glass;
  auto h = build_total(sg, BathSpec{5, 1.0}, CouplingSpec{0.0});
  RMatrix d = RMatrix(h.matrix());
  EXPECT_TRUE(d.isDiagonal());
  for (Config k = 0; k < sg.n_configs(); ++k)
    for (int n = 0; n <= 5; ++n) EXPECT_DOUBLE_EQ(d(h.index(k, n), h.index(k, n)), sg.energy(k) + n + 0.5);
}

TEST(BuildTotal, SingleQubitFourByFour) {
  SpinGlass sg(1, {HalfInt::from_twice(1)}, {});
  auto h = build_total(sg, BathSpec{1, 1.0}, CouplingSpec{0.2});
  RMatrix m = RMatrix(h.matrix());
  RMatrix ref(4, 4);
  // order: |up,0>, |up,1>, |down,0>, |down,1>
  ref << 1.0, 0.0, 0.0, -0.2,
         0.0, 2.0, 0.2, 0.0,
         0.0, 0.2, 0.0, 0.0,
         -0.2, 0.0, 0.0, 1.0;
  EXPECT_LT((m - ref).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildTotal, MatchesDenseOracle) {
  for (int n = 2; n <= 5; ++n) {
    auto sg = n >= 3 ? generate_instance(n, 5).spin_glass
                     : SpinGlass(2, {HalfInt::from_twice(1), HalfInt::from_twice(-3)}, {{0, 1, HalfInt::from_twice(2)}});
    auto h = build_total(sg, BathSpec{4, 1.0}, CouplingSpec{0.37});
    RMatrix ref = oracle::total_hamiltonian(fields(sg), couplings(sg), 4, 1.0, 0.37);
    EXPECT_LT((RMatrix(h.matrix()) - ref).cwiseAbs().maxCoeff(), 1e-14) << "n_s=" << n;
  }
}

TEST(BuildTotal, ExactlySymmetric) {
  auto h = build_total(generate_instance(6, 8).spin_glass, BathSpec{7, 1.0}, CouplingSpec{0.45});
  EXPECT_EQ(h.asymmetry(), 0.0);
}

TEST(BuildTotal, CouplingFlipsOneSpinAndOnePhoton) {
  auto h = build_total(generate_instance(5, 3).spin_glass, BathSpec{6, 1.0}, CouplingSpec{0.3});
  const auto& m = h.matrix();
  const int nf = h.fock_dim();
  for (int r = 0; r < m.outerSize(); ++r) {
    for (RSparse::InnerIterator it(m, r); it; ++it) {
      if (it.row() == it.col()) continue;
      const Config k1 = static_cast<Config>(it.row() / nf), k2 = static_cast<Config>(it.col() / nf);
      const int n1 = static_cast<int>(it.row() % nf), n2 = static_cast<int>(it.col() % nf);
      EXPECT_EQ(std::popcount(k1 ^ k2), 1);
      EXPECT_EQ(std::abs(n1 - n2), 1);
    }
  }
}

TEST(BuildTotal, RejectsBadSpecs) {
  auto sg = generate_instance(3, 0).spin_glass;
  EXPECT_THROW(build_total(sg, BathSpec{0, 1.0}, CouplingSpec{0.2}), ConfigError);
  EXPECT_THROW(build_total(sg, BathSpec{3, 1.0}, CouplingSpec{-0.1}), ConfigError);
}

TEST(Parity, PhaseOfBasisStates) {
  // all up, vacuum: exp(i pi n_s / 2)
  EXPECT_NEAR(std::abs(parity_of(0, 0, 2) - Complex(-1.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(parity_of(0, 0, 1) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(parity_of(0, 0, 4) - Complex(1.0, 0.0)), 0.0, 1e-15);
  for (int n_s = 1; n_s <= 5; ++n_s) {
    for (Config k = 0; k < (Config{1} << n_s); ++k) {
      for (int n = 0; n < 4; ++n) {
        double phase = M_PI * n;
        for (int m = 0; m < n_s; ++m) phase += M_PI * oracle::spin(k, m) / 2.0;
        EXPECT_NEAR(std::abs(parity_of(k, n, n_s) - std::polar(1.0, phase)), 0.0, 1e-12);
        // one spin flip with one photon keeps the sector
        EXPECT_NEAR(std::abs(parity_of(k ^ 1, n + 1, n_s) - parity_of(k, n, n_s)), 0.0, 1e-12);
      }
    }
  }
}

TEST(Apply, MatchesDenseProduct) {
  auto sg = generate_instance(4, 6).spin_glass;
  auto h = build_total(sg, BathSpec{5, 1.0}, CouplingSpec{0.25});
  CVector x = CVector::Random(h.dimension());
  CVector ref = RMatrix(h.matrix()).cast<Complex>() * x;
  EXPECT_LT((h.apply(x) - ref).cwiseAbs().maxCoeff(), 1e-13);
  double lo = 0.0, hi = 0.0;
  h.spectral_bounds(lo, hi);
  Eigen::SelfAdjointEigenSolver<RMatrix> es{RMatrix(h.matrix())};
  EXPECT_LE(lo, es.eigenvalues()(0));
  EXPECT_GE(hi, es.eigenvalues()(es.eigenvalues().size() - 1));
}

}  // namespace
}  // namespace icebox

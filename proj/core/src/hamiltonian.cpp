// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "icebox/error.hpp"

namespace icebox {

SparseHamiltonian::SparseHamiltonian(RSparse matrix, int system_dim, int n_max)
    : matrix_(std::move(matrix)), system_dim_(system_dim), n_max_(n_max) {
  matrix_.makeCompressed();
  if (matrix_.rows() != matrix_.cols() ||
      matrix_.rows() != static_cast<Eigen::Index>(system_dim) * (n_max + 1)) {
    throw InputError("Hamiltonian dimension does not match system and Fock sizes");
  }
}

void SparseHamiltonian::apply(const CVector& x, CVector& y) const {
  const Eigen::Index n = matrix_.rows();
  y.resize(n);
  const auto* outer = matrix_.outerIndexPtr();
  const auto* inner = matrix_.innerIndexPtr();
  const double* val = matrix_.valuePtr();
  const Complex* xp = x.data();
  Complex* yp = y.data();
  for (Eigen::Index i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (auto p = outer[i]; p < outer[i + 1]; ++p) {
      const Complex& v = xp[inner[p]];
      re += val[p] * v.real();
      im += val[p] * v.imag();
    }
    yp[i] = Complex(re, im);
  }
}

CVector SparseHamiltonian::apply(const CVector& x) const {
  CVector y;
  apply(x, y);
  return y;
}

double SparseHamiltonian::expectation(const CVector& x) const {
  CVector y;
  apply(x, y);
  return x.dot(y).real();
}

void SparseHamiltonian::spectral_bounds(double& lo, double& hi) const {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const auto* outer = matrix_.outerIndexPtr();
  const auto* inner = matrix_.innerIndexPtr();
  const double* val = matrix_.valuePtr();
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    double diag = 0.0, radius = 0.0;
    for (auto p = outer[i]; p < outer[i + 1]; ++p) {
      if (inner[p] == i) {
        diag = val[p];
      } else {
        radius += std::fabs(val[p]);
      }
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
}

double SparseHamiltonian::asymmetry() const {
  RSparse t = matrix_.transpose();
  RSparse d = matrix_ - t;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (RSparse::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::fabs(it.value()));
  }
  return worst;
}

SparseHamiltonian build_composite(const RSparse& h_sys, const RSparse& x_sys, double g,
                                  const BathSpec& bath) {
  if (bath.n_max < 1) throw ConfigError("n_max must be at least 1");
  if (h_sys.rows() != h_sys.cols() || x_sys.rows() != h_sys.rows() || x_sys.cols() != h_sys.cols()) {
    throw InputError("system operators must be square and of equal size");
  }
  const Eigen::Index ds = h_sys.rows();
  const int nf = bath.n_max + 1;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(h_sys.nonZeros() * nf + ds * nf +
                                        2 * x_sys.nonZeros() * nf));
  auto idx = [nf](Eigen::Index k, int n) { return k * nf + n; };

  for (Eigen::Index r = 0; r < h_sys.outerSize(); ++r) {
    for (RSparse::InnerIterator it(h_sys, r); it; ++it) {
      for (int n = 0; n < nf; ++n) trip.emplace_back(idx(it.row(), n), idx(it.col(), n), it.value());
    }
  }
  for (Eigen::Index k = 0; k < ds; ++k) {
    for (int n = 0; n < nf; ++n) trip.emplace_back(idx(k, n), idx(k, n), bath.omega * (n + 0.5));
  }
  if (g != 0.0) {
    for (Eigen::Index r = 0; r < x_sys.outerSize(); ++r) {
      for (RSparse::InnerIterator it(x_sys, r); it; ++it) {
        // <n+1| b^dag - b |n> = sqrt(n+1), <n-1| b^dag - b |n> = -sqrt(n)
        for (int n = 0; n < nf; ++n) {
          if (n + 1 < nf) {
            trip.emplace_back(idx(it.row(), n + 1), idx(it.col(), n),
                              g * it.value() * std::sqrt(n + 1.0));
          }
          if (n > 0) {
            trip.emplace_back(idx(it.row(), n - 1), idx(it.col(), n),
                              -g * it.value() * std::sqrt(static_cast<double>(n)));
          }
        }
      }
    }
  }
  RSparse h(ds * nf, ds * nf);
  h.setFromTriplets(trip.begin(), trip.end());
  h.prune(0.0);
  return SparseHamiltonian(std::move(h), static_cast<int>(ds), bath.n_max);
}

SparseHamiltonian build_total(const SpinGlass& sg, const BathSpec& bath, const CouplingSpec& cpl) {
  if (cpl.lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if (bath.n_max < 1) throw ConfigError("n_max must be at least 1");
  if (sg.n_spins() > 24) throw ConfigError("composite Hamiltonian limited to 24 qubits");
  const Eigen::Index ds = static_cast<Eigen::Index>(sg.n_configs());
  RSparse hs(ds, ds);
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(ds);
    for (Eigen::Index k = 0; k < ds; ++k) trip.emplace_back(k, k, sg.energy(static_cast<Config>(k)));
    hs.setFromTriplets(trip.begin(), trip.end());
  }
  RSparse x(ds, ds);
  {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(ds) * sg.n_spins());
    for (Eigen::Index k = 0; k < ds; ++k) {
      for (int m = 0; m < sg.n_spins(); ++m) {
        Eigen::Index kf = k ^ (Eigen::Index{1} << m);
        // sigma+ raises a down spin with +1, sigma- lowers an up spin and
        // enters with a minus sign.
        trip.emplace_back(kf, k, ((k >> m) & 1) ? 1.0 : -1.0);
      }
    }
    x.setFromTriplets(trip.begin(), trip.end());
  }
  return build_composite(hs, x, cpl.lambda, bath);
}

Complex parity_of(Config k, int n, int n_spins) {
  // exp(i pi n) * exp(i pi (n_s - 2 popcount) / 2) = (-1)^n i^(n_s - 2 pc)
  int pc = 0;
  for (int m = 0; m < n_spins; ++m) pc += static_cast<int>((k >> m) & 1U);
  int power = ((n_spins - 2 * pc) % 4 + 4) % 4;
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex p = kPowers[power];
  return (n % 2 == 0) ? p : -p;
}

}  // namespace icebox

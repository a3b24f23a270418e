// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/observables.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "icebox/hamiltonian.hpp"

namespace icebox {

RVector spin_marginal(const CompositeState& psi) {
  return psi.as_matrix().cwiseAbs2().colwise().sum().transpose();
}

double ground_state_probability(const CompositeState& psi, const SpinGlass& sg) {
  ObservableSet obs(sg, 0);
  return obs.ground_probability(spin_marginal(psi));
}

double lower_energy_probability(const CompositeState& psi, const SpinGlass& sg, double e_ref) {
  RVector p = spin_marginal(psi);
  double s = 0.0;
  for (Config k = 0; k < sg.n_configs(); ++k) {
    if (sg.energy(k) < e_ref) s += p(static_cast<Eigen::Index>(k));
  }
  return s;
}

std::vector<double> hamming_distribution(const CompositeState& psi, Config ref) {
  RVector p = spin_marginal(psi);
  std::vector<double> h(psi.n_spins + 1, 0.0);
  for (Eigen::Index k = 0; k < p.size(); ++k) h[hamming_distance(static_cast<Config>(k), ref)] += p(k);
  return h;
}

std::vector<double> fock_distribution(const CompositeState& psi) {
  RVector p = psi.as_matrix().cwiseAbs2().rowwise().sum();
  return {p.data(), p.data() + p.size()};
}

double entanglement_entropy(const CompositeState& psi) {
  // For a pure state the spin and bath reduced matrices share their nonzero
  // spectrum; the bath side is (n_max + 1)-dimensional.
  auto m = psi.as_matrix();
  CMatrix rho_b = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_b, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i);
    if (p > 1e-300) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double joint_correlation(const CompositeState& psi, const SpinGlass& sg) {
  auto g = ground_states(sg);
  auto m = psi.as_matrix();
  double both = 0.0, p_sg = 0.0;
  for (Config k : g.configs) {
    both += std::norm(m(0, static_cast<Eigen::Index>(k)));
    p_sg += m.col(static_cast<Eigen::Index>(k)).squaredNorm();
  }
  double p_bg = m.row(0).squaredNorm();
  return -both + p_sg * p_bg;
}

Complex total_parity(const CompositeState& psi) {
  auto m = psi.as_matrix();
  Complex acc{0.0, 0.0};
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    for (Eigen::Index n = 0; n < m.rows(); ++n) {
      acc += std::norm(m(n, k)) * parity_of(static_cast<Config>(k), static_cast<int>(n), psi.n_spins);
    }
  }
  return acc;
}

ObservableSet::ObservableSet(const SpinGlass& sg, Config reference)
    : sg_(sg), reference_(reference), e_ref_(sg.energy(reference)) {
  const auto energies = sg.all_energies();
  e_ground_ = *std::min_element(energies.begin(), energies.end());
  ground_.resize(energies.size());
  lower_.resize(energies.size());
  hamming_.resize(energies.size());
  for (std::size_t k = 0; k < energies.size(); ++k) {
    ground_[k] = energies[k] == e_ground_;
    lower_[k] = energies[k] < e_ref_;
    hamming_[k] = hamming_distance(static_cast<Config>(k), reference);
  }
}

double ObservableSet::ground_probability(const RVector& marginal) const {
  double s = 0.0;
  for (Eigen::Index k = 0; k < marginal.size(); ++k) {
    if (ground_[k]) s += marginal(k);
  }
  return s;
}

double ObservableSet::lower_probability(const RVector& marginal) const {
  double s = 0.0;
  for (Eigen::Index k = 0; k < marginal.size(); ++k) {
    if (lower_[k]) s += marginal(k);
  }
  return s;
}

std::vector<double> ObservableSet::hamming_histogram(const RVector& marginal) const {
  std::vector<double> h(sg_.n_spins() + 1, 0.0);
  for (Eigen::Index k = 0; k < marginal.size(); ++k) h[hamming_[k]] += marginal(k);
  return h;
}

}  // namespace icebox

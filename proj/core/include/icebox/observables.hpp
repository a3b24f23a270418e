// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "icebox/composite_state.hpp"
#include "icebox/spin_glass.hpp"

namespace icebox {

// Probability of each spin configuration with the Fock index summed out.
RVector spin_marginal(const CompositeState& psi);

double ground_state_probability(const CompositeState& psi, const SpinGlass& sg);
// Probability of configurations with energy strictly below e_ref.
double lower_energy_probability(const CompositeState& psi, const SpinGlass& sg, double e_ref);

std::vector<double> hamming_distribution(const CompositeState& psi, Config ref);
std::vector<double> fock_distribution(const CompositeState& psi);

// Von Neumann entropy (natural log) of the spin reduced state.
double entanglement_entropy(const CompositeState& psi);
// -<P_sg P_bg> + <P_sg><P_bg>, P_sg = spin ground projector, P_bg = |0><0|.
double joint_correlation(const CompositeState& psi, const SpinGlass& sg);
Complex total_parity(const CompositeState& psi);

// Precomputed masks for evaluating the above at many sample times.
class ObservableSet {
 public:
  ObservableSet(const SpinGlass& sg, Config reference);

  const SpinGlass& spin_glass() const { return sg_; }
  Config reference() const { return reference_; }
  double reference_energy() const { return e_ref_; }
  double ground_energy() const { return e_ground_; }
  bool is_ground(Config k) const { return ground_[k] != 0; }
  bool is_lower(Config k) const { return lower_[k] != 0; }
  int hamming(Config k) const { return hamming_[k]; }

  double ground_probability(const RVector& marginal) const;
  double lower_probability(const RVector& marginal) const;
  std::vector<double> hamming_histogram(const RVector& marginal) const;

 private:
  SpinGlass sg_;
  Config reference_;
  double e_ref_;
  double e_ground_;
  std::vector<char> ground_;
  std::vector<char> lower_;
  std::vector<int> hamming_;
};

}  // namespace icebox

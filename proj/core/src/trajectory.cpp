// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/trajectory.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "icebox/error.hpp"

namespace icebox {

std::vector<double> Trajectory::times() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.t);
  return out;
}

std::vector<double> Trajectory::column_p_ground() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.p_ground);
  return out;
}

std::vector<double> Trajectory::column_p_lower() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.p_lower);
  return out;
}

Trajectory evolve(const SparseHamiltonian& h, const CompositeState& psi0, const ObservableSet& obs,
                  const EvolveOptions& opts) {
  if (psi0.amplitudes.size() != h.dimension() || psi0.n_max != h.n_max()) {
    throw InputError("state does not match the Hamiltonian");
  }
  Trajectory traj;
  traj.n_spins = psi0.n_spins;
  traj.n_max = psi0.n_max;
  CompositeState view{CVector(), psi0.n_spins, psi0.n_max};

  auto record = [&](double t, const CVector& psi) {
    view.amplitudes = psi;
    TrajectoryRecord r;
    r.t = t;
    RVector marginal = spin_marginal(view);
    r.p_ground = obs.ground_probability(marginal);
    r.p_lower = obs.lower_probability(marginal);
    r.hamming = obs.hamming_histogram(marginal);
    r.fock = fock_distribution(view);
    r.norm = psi.norm();
    r.energy = h.expectation(psi);
    r.parity = total_parity(view);
    if (opts.record_entanglement) {
      r.entropy = entanglement_entropy(view);
      auto m = view.as_matrix();
      double both = 0.0;
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        if (obs.is_ground(static_cast<Config>(k))) both += std::norm(m(0, k));
      }
      r.correlation = -both + r.p_ground * r.fock.front();
    }
    const double top = r.fock.back();
    if (top > opts.truncation_tol) {
      throw EvolutionError("population of Fock level " + std::to_string(psi0.n_max) + " reached " +
                               std::to_string(top) + " at t = " + std::to_string(t) +
                               "; rerun with a larger n_max",
                           t, top);
    }
    traj.records.push_back(std::move(r));
  };

  CVector final_psi = propagate(h, psi0.amplitudes, opts.propagation, record);
  traj.final_state = CompositeState{std::move(final_psi), psi0.n_spins, psi0.n_max};
  return traj;
}

Trajectory cool_quantum(const SpinGlass& sg, Config config, double lambda, const EvolveOptions& opts,
                        int n_max, int max_retries) {
  if (n_max < 1) n_max = default_n_max(sg.n_spins());
  ObservableSet obs(sg, config);
  for (int attempt = 0;; ++attempt) {
    BathSpec bath{n_max, 1.0};
    auto h = build_total(sg, bath, CouplingSpec{lambda});
    auto psi0 = initial_state(sg, config, bath);
    try {
      return evolve(h, psi0, obs, opts);
    } catch (const EvolutionError& e) {
      if (attempt >= max_retries) throw;
      warn(std::string(e.what()) + " (retrying with n_max = " + std::to_string(grown_n_max(n_max)) + ")");
      n_max = grown_n_max(n_max);
    }
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,P_g,P_lower,S,C,energy,norm,parity_re,parity_im";
  for (int h = 0; h <= traj.n_spins; ++h) out << ",h" << h;
  for (int n = 0; n <= traj.n_max; ++n) out << ",n" << n;
  out << '\n';
  out << std::setprecision(12);
  for (const auto& r : traj.records) {
    out << r.t << ',' << r.p_ground << ',' << r.p_lower << ',' << r.entropy << ',' << r.correlation
        << ',' << r.energy << ',' << r.norm << ',' << r.parity.real() << ',' << r.parity.imag();
    for (double v : r.hamming) out << ',' << v;
    for (double v : r.fock) out << ',' << v;
    out << '\n';
  }
}

}  // namespace icebox

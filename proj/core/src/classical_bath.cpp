// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/classical_bath.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "icebox/error.hpp"
#include "icebox/parallel.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

ClassicalBathState sample_initial(std::mt19937_64& rng) {
  // Box-Muller on the portable uniform draw; each coordinate has variance 1/2.
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  double r = std::sqrt(-std::log(1.0 - u1));
  double a = 2.0 * M_PI * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

CVector spin_basis_state(Config config, int n_spins) {
  CVector psi = CVector::Zero(Eigen::Index{1} << n_spins);
  if (config >= static_cast<Config>(psi.size())) throw InputError("configuration out of range");
  psi(static_cast<Eigen::Index>(config)) = 1.0;
  return psi;
}

CVector apply_sigma_y_sum(const CVector& psi, int n_spins) {
  // sigma_y|up> = i|down>, sigma_y|down> = -i|up>; bit set means down.
  CVector out = CVector::Zero(psi.size());
  const Complex i{0.0, 1.0};
  for (int m = 0; m < n_spins; ++m) {
    const Eigen::Index b = Eigen::Index{1} << m;
    for (Eigen::Index base = 0; base < psi.size(); base += 2 * b) {
      out.segment(base + b, b) += i * psi.segment(base, b);
      out.segment(base, b) -= i * psi.segment(base + b, b);
    }
  }
  return out;
}

namespace {

RVector diagonal_energies(const SpinGlass& sg) {
  auto e = sg.all_energies();
  return Eigen::Map<const RVector>(e.data(), static_cast<Eigen::Index>(e.size()));
}

struct Stacked {
  CVector psi;
  double q = 0.0;
  double phi = 0.0;
};

class SemiclassicalRhs {
 public:
  SemiclassicalRhs(const RVector& energies, int n_spins, double lambda, double omega, double shift)
      : e_(energies), n_(n_spins), lambda_(lambda), omega_(omega), shift_(shift) {}

  void operator()(const Stacked& y, Stacked& dy) const {
    CVector sy = apply_sigma_y_sum(y.psi, n_);
    double sy_mean = y.psi.dot(sy).real();
    dy.psi = Complex(0.0, -1.0) *
             ((e_.array() - shift_).matrix().cwiseProduct(y.psi) + (2.0 * lambda_ * y.q) * sy);
    dy.q = -omega_ * y.phi;
    dy.phi = omega_ * y.q + lambda_ * sy_mean;
  }

 private:
  const RVector& e_;
  int n_;
  double lambda_;
  double omega_;
  double shift_;
};

void rk4(const SemiclassicalRhs& f, Stacked& y, double dt, Stacked* k) {
  Stacked& k1 = k[0];
  Stacked& k2 = k[1];
  Stacked& k3 = k[2];
  Stacked& k4 = k[3];
  Stacked& tmp = k[4];
  f(y, k1);
  tmp.psi = y.psi + 0.5 * dt * k1.psi;
  tmp.q = y.q + 0.5 * dt * k1.q;
  tmp.phi = y.phi + 0.5 * dt * k1.phi;
  f(tmp, k2);
  tmp.psi = y.psi + 0.5 * dt * k2.psi;
  tmp.q = y.q + 0.5 * dt * k2.q;
  tmp.phi = y.phi + 0.5 * dt * k2.phi;
  f(tmp, k3);
  tmp.psi = y.psi + dt * k3.psi;
  tmp.q = y.q + dt * k3.q;
  tmp.phi = y.phi + dt * k3.phi;
  f(tmp, k4);
  y.psi += (dt / 6.0) * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
  y.q += (dt / 6.0) * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
  y.phi += (dt / 6.0) * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
}

double energy_with(const RVector& e, int n_spins, double lambda, const CVector& psi, double q,
                   double phi, double omega) {
  double hs = psi.cwiseAbs2().dot(e);
  double sy = psi.dot(apply_sigma_y_sum(psi, n_spins)).real();
  return hs + omega * (q * q + phi * phi) + 2.0 * lambda * q * sy;
}

}  // namespace

double semiclassical_energy(const SpinGlass& sg, double lambda, const CVector& psi,
                            const ClassicalBathState& bath, double omega) {
  return energy_with(diagonal_energies(sg), sg.n_spins(), lambda, psi, bath.q, bath.phi, omega);
}

SemiclassicalTrajectory evolve_semiclassical(const SpinGlass& sg, double lambda,
                                             const CVector& psi_s0, const ClassicalBathState& bath0,
                                             const ObservableSet& obs,
                                             const SemiclassicalOptions& opts) {
  if (psi_s0.size() != static_cast<Eigen::Index>(sg.n_configs())) {
    throw InputError("spin state length does not match the spin glass");
  }
  if (!(opts.dt > 0.0) || !(opts.sample_interval > 0.0)) {
    throw ConfigError("time step and sample interval must be positive");
  }
  const RVector energies = diagonal_energies(sg);
  const double shift = psi_s0.cwiseAbs2().dot(energies) / psi_s0.squaredNorm();
  SemiclassicalRhs rhs(energies, sg.n_spins(), lambda, opts.omega, shift);

  SemiclassicalTrajectory out;
  Stacked y{psi_s0, bath0.q, bath0.phi};
  Stacked work[5];

  auto record = [&](double t) {
    RVector marginal = y.psi.cwiseAbs2();
    out.t.push_back(t);
    out.p_ground.push_back(obs.ground_probability(marginal));
    out.p_lower.push_back(obs.lower_probability(marginal));
    out.hamming.push_back(obs.hamming_histogram(marginal));
    std::vector<double> occ(opts.n_max + 1, 0.0);
    int n = static_cast<int>(std::lround(y.q * y.q + y.phi * y.phi - 0.5));
    occ[std::clamp(n, 0, opts.n_max)] = 1.0;
    out.occupation.push_back(std::move(occ));
    out.q.push_back(y.q);
    out.phi.push_back(y.phi);
    out.norm.push_back(y.psi.norm());
    out.energy.push_back(energy_with(energies, sg.n_spins(), lambda, y.psi, y.q, y.phi, opts.omega));
  };

  record(0.0);
  const int samples = sample_count(opts.t_final, opts.sample_interval);
  double t = 0.0;
  for (int j = 1; j < samples; ++j) {
    double t_next = std::min(j * opts.sample_interval, opts.t_final);
    double span = t_next - t;
    int steps = std::max(1, static_cast<int>(std::ceil(span / opts.dt - 1e-9)));
    double dt = span / steps;
    for (int s = 0; s < steps; ++s) {
      rk4(rhs, y, dt, work);
      if (!std::isfinite(y.q) || !std::isfinite(y.phi) || std::fabs(y.q) > opts.divergence_limit ||
          std::fabs(y.phi) > opts.divergence_limit) {
        out.aborted = true;
        out.abort_time = t + (s + 1) * dt;
        return out;
      }
    }
    t = t_next;
    record(t);
  }
  out.final_spin_state = std::exp(Complex(0.0, -shift * t)) * y.psi;
  return out;
}

EnsembleResult ensemble_average(const SpinGlass& sg, double lambda, const CVector& psi_s0,
                                const ObservableSet& obs, const SemiclassicalOptions& opts,
                                const EnsembleOptions& ens) {
  if (ens.samples < 1) throw ConfigError("ensemble needs at least one sample");
  std::vector<SemiclassicalTrajectory> runs(ens.samples);
  parallel_for(
      static_cast<std::size_t>(ens.samples),
      [&](std::size_t i) {
        auto rng = make_stream(ens.seed, {static_cast<std::uint64_t>(i)});
        auto bath0 = sample_initial(rng);
        runs[i] = evolve_semiclassical(sg, lambda, psi_s0, bath0, obs, opts);
      },
      ens.workers);

  EnsembleResult res;
  res.samples = ens.samples;
  res.seed = ens.seed;
  std::vector<const SemiclassicalTrajectory*> ok;
  for (const auto& r : runs) {
    if (r.aborted) {
      ++res.aborts;
    } else {
      ok.push_back(&r);
    }
  }
  if (res.aborts > ens.max_abort_fraction * ens.samples) {
    throw EvolutionError(std::to_string(res.aborts) + " of " + std::to_string(ens.samples) +
                             " semiclassical trajectories diverged",
                         0.0, static_cast<double>(res.aborts));
  }
  if (ok.empty()) throw EvolutionError("every semiclassical trajectory diverged", 0.0, 0.0);

  const std::size_t nt = ok.front()->t.size();
  const double m = static_cast<double>(ok.size());
  res.t = ok.front()->t;
  res.p_ground.assign(nt, 0.0);
  res.p_lower.assign(nt, 0.0);
  res.p_ground_stderr.assign(nt, 0.0);
  res.p_lower_stderr.assign(nt, 0.0);
  res.energy.assign(nt, 0.0);
  res.norm.assign(nt, 0.0);
  res.hamming.assign(nt, std::vector<double>(sg.n_spins() + 1, 0.0));
  res.occupation.assign(nt, std::vector<double>(opts.n_max + 1, 0.0));
  for (std::size_t j = 0; j < nt; ++j) {
    double sg2 = 0.0, sl2 = 0.0;
    for (const auto* r : ok) {
      res.p_ground[j] += r->p_ground[j];
      res.p_lower[j] += r->p_lower[j];
      res.energy[j] += r->energy[j];
      res.norm[j] += r->norm[j];
      for (std::size_t h = 0; h < res.hamming[j].size(); ++h) res.hamming[j][h] += r->hamming[j][h];
      for (std::size_t n = 0; n < res.occupation[j].size(); ++n) {
        res.occupation[j][n] += r->occupation[j][n];
      }
    }
    res.p_ground[j] /= m;
    res.p_lower[j] /= m;
    res.energy[j] /= m;
    res.norm[j] /= m;
    for (auto& v : res.hamming[j]) v /= m;
    for (auto& v : res.occupation[j]) v /= m;
    for (const auto* r : ok) {
      sg2 += (r->p_ground[j] - res.p_ground[j]) * (r->p_ground[j] - res.p_ground[j]);
      sl2 += (r->p_lower[j] - res.p_lower[j]) * (r->p_lower[j] - res.p_lower[j]);
    }
    if (ok.size() > 1) {
      res.p_ground_stderr[j] = std::sqrt(sg2 / (m - 1.0) / m);
      res.p_lower_stderr[j] = std::sqrt(sl2 / (m - 1.0) / m);
    }
  }
  return res;
}

void write_ensemble_csv(std::ostream& out, const EnsembleResult& res, int n_spins) {
  const int n_max = res.occupation.empty() ? 0 : static_cast<int>(res.occupation.front().size()) - 1;
  out << "t,P_g,P_lower,S,C,energy,norm,parity_re,parity_im";
  for (int h = 0; h <= n_spins; ++h) out << ",h" << h;
  for (int n = 0; n <= n_max; ++n) out << ",n" << n;
  out << ",stderr_P_g,stderr_P_lower\n";
  out << std::setprecision(12);
  for (std::size_t j = 0; j < res.t.size(); ++j) {
    out << res.t[j] << ',' << res.p_ground[j] << ',' << res.p_lower[j] << ",0,0," << res.energy[j]
        << ',' << res.norm[j] << ",nan,nan";
    for (double v : res.hamming[j]) out << ',' << v;
    for (double v : res.occupation[j]) out << ',' << v;
    out << ',' << res.p_ground_stderr[j] << ',' << res.p_lower_stderr[j] << '\n';
  }
}

std::string ensemble_metadata_json(const EnsembleResult& res) {
  nlohmann::json j{{"M", res.samples}, {"seed", res.seed}, {"aborts", res.aborts}};
  return j.dump(2);
}

}  // namespace icebox

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/hybrid.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>

#include "icebox/error.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/observables.hpp"
#include "icebox/parallel.hpp"

namespace icebox {

Config classical_descent(const SpinGlass& sg, Config start) {
  if (start >= sg.n_configs()) throw InputError("configuration out of range");
  Config k = start;
  auto e = sg.energy_twice(k);
  for (;;) {
    int best = -1;
    auto best_e = e;
    for (int m = 0; m < sg.n_spins(); ++m) {
      auto em = sg.energy_twice(k ^ (Config{1} << m));
      if (em < best_e) {
        best_e = em;
        best = m;
      }
    }
    if (best < 0) return k;
    k ^= Config{1} << best;
    e = best_e;
  }
}

Config measure_marginal(const RVector& marginal, std::mt19937_64& rng) {
  const double total = marginal.sum();
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  Eigen::Index last = 0;
  for (Eigen::Index k = 0; k < marginal.size(); ++k) {
    if (marginal(k) <= 0.0) continue;
    acc += marginal(k);
    last = k;
    if (u < acc) return static_cast<Config>(k);
  }
  return static_cast<Config>(last);
}

Config measure(const CompositeState& psi, std::mt19937_64& rng) {
  return measure_marginal(spin_marginal(psi), rng);
}

namespace {

class Cooler {
 public:
  Cooler(const SpinGlass& sg, const HybridConfig& cfg) : sg_(sg), cfg_(cfg) {
    n_max_ = cfg.n_max > 0 ? cfg.n_max : default_n_max(sg.n_spins());
    rebuild();
  }

  const RVector& marginal(Config s1) {
    auto it = cache_.find(s1);
    if (it != cache_.end()) return it->second;
    for (int attempt = 0;; ++attempt) {
      try {
        return cache_.emplace(s1, run(s1)).first->second;
      } catch (const EvolutionError& e) {
        if (attempt >= 6) throw;
        warn(std::string(e.what()) + " (retrying with n_max = " + std::to_string(grown_n_max(n_max_)) + ")");
        n_max_ = grown_n_max(n_max_);
        cache_.clear();
        rebuild();
      }
    }
  }

 private:
  void rebuild() { h_ = build_total(sg_, BathSpec{n_max_, 1.0}, CouplingSpec{cfg_.lambda}); }

  RVector run(Config s1) {
    CompositeState psi0;
    psi0.n_spins = sg_.n_spins();
    psi0.n_max = n_max_;
    psi0.amplitudes = CVector::Zero(h_.dimension());
    psi0.amplitudes(psi0.index(static_cast<Eigen::Index>(s1), 0)) = 1.0;
    PropagationOptions prop = cfg_.propagation;
    prop.t_final = cfg_.t_cool;
    const int nf = n_max_ + 1;
    auto check = [&](double t, const CVector& psi) {
      double top = 0.0;
      for (Eigen::Index i = nf - 1; i < psi.size(); i += nf) top += std::norm(psi(i));
      if (top > 1e-6) {
        throw EvolutionError("population of the top Fock level reached " + std::to_string(top), t, top);
      }
    };
    CompositeState out{propagate(h_, psi0.amplitudes, prop, check), sg_.n_spins(), n_max_};
    return spin_marginal(out);
  }

  const SpinGlass& sg_;
  const HybridConfig& cfg_;
  int n_max_;
  SparseHamiltonian h_;
  std::map<Config, RVector> cache_;
};

}  // namespace

HybridTrace run_hybrid(const ProblemInstance& inst, const HybridConfig& cfg,
                       const MeasurementFilter& filter) {
  const auto& sg = inst.spin_glass;
  if (!(cfg.t_cool > 0.0)) throw ConfigError("t_cool must be positive");
  if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  HybridTrace trace;
  if (cfg.stop_threshold) {
    trace.threshold = *cfg.stop_threshold;
  } else {
    if (sg.n_spins() > 20) throw ConfigError("stop threshold required for n_s > 20");
    trace.threshold = ground_states(sg).energy;
  }

  auto start_rng = make_stream(cfg.seed, {0});
  auto measure_rng = make_stream(cfg.seed, {1});
  const Config mask = sg.n_configs() - 1;
  trace.seed_config = cfg.start ? *cfg.start : (start_rng() & mask);
  if (trace.seed_config > mask) throw InputError("start configuration out of range");

  Config s1 = classical_descent(sg, trace.seed_config);
  double e1 = sg.energy(s1);
  trace.initial_s1 = s1;
  trace.initial_energy = e1;

  if (e1 <= trace.threshold) {
    trace.reached_threshold = true;
  } else {
    Cooler cooler(sg, cfg);
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
      HybridIteration rec;
      rec.iter = iter;
      rec.config_s1 = s1;
      rec.energy_s1 = e1;
      Config s2 = measure_marginal(cooler.marginal(s1), measure_rng);
      if (filter) s2 = filter(iter, s2, measure_rng) & mask;
      rec.config_s2 = s2;
      rec.config_s3 = classical_descent(sg, s2);
      rec.energy_s3 = sg.energy(rec.config_s3);
      rec.accepted = rec.energy_s3 <= e1;
      if (rec.accepted) {
        s1 = rec.config_s3;
        e1 = rec.energy_s3;
      }
      trace.iterations.push_back(rec);
      if (e1 <= trace.threshold) {
        trace.reached_threshold = true;
        break;
      }
    }
  }
  trace.budget_exhausted = !trace.reached_threshold;
  trace.final_config = s1;
  trace.final_energy = e1;
  return trace;
}

void write_hybrid_csv(std::ostream& out, const HybridTrace& trace) {
  out << "iter,E_s1,config_s1,config_s2,E_s3,accepted\n" << std::setprecision(12);
  for (const auto& r : trace.iterations) {
    out << r.iter << ',' << r.energy_s1 << ',' << format_config_hex(r.config_s1) << ','
        << format_config_hex(r.config_s2) << ',' << r.energy_s3 << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace icebox

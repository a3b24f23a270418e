// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS or FAIL line. Run with a
// list of criterion numbers, or with no arguments to run all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "icebox/classical_bath.hpp"
#include "icebox/complexity.hpp"
#include "icebox/composite_state.hpp"
#include "icebox/continuous.hpp"
#include "icebox/error.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/hybrid.hpp"
#include "icebox/instance.hpp"
#include "icebox/lindblad.hpp"
#include "icebox/observables.hpp"
#include "icebox/parallel.hpp"
#include "icebox/qwalk.hpp"
#include "icebox/relaxation_fit.hpp"
#include "icebox/stats.hpp"
#include "icebox/three_level.hpp"
#include "icebox/trajectory.hpp"
#include "oracle.hpp"

namespace {

using namespace icebox;

// Tolerances and thresholds, one block per criterion.
namespace tol {
constexpr double kNormDrift = 1e-9;
constexpr double kEnergyDrift = 1e-8;
constexpr double kParityDrift = 1e-10;
constexpr double kOracleState = 1e-6;
constexpr double kThreeLevel = 1e-8;
constexpr double kOverdamped = 0.05;
constexpr double kClosedLimit = 1e-7;
constexpr double kRiseFactor = 10.0;
constexpr double kKappaOrderFraction = 0.8;
constexpr double kTrotterSlope = 3.0;
constexpr double kTrotterSlopeBand = 0.2;
constexpr double kBallistic = 1.0;
constexpr double kDiffusive = 0.5;
constexpr double kExponentBand = 0.1;
constexpr double kFixedPoint = 1e-10;
constexpr double kHybridSuccess = 0.9;
constexpr double kComplexitySlope = 0.16;
constexpr double kComplexityBand = 0.08;
constexpr double kFitNoiseless = 1e-6;
constexpr double kFitNoisy = 0.05;
constexpr double kEntanglementZero = 1e-12;
constexpr double kDrawdownFactor = 2.0;
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double time_average(const std::vector<double>& t, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
  return s / (t.back() - t.front());
}

std::vector<double> oracle_fields(const SpinGlass& sg) {
  std::vector<double> h;
  for (auto j : sg.on_site()) h.push_back(j.value());
  return h;
}

std::vector<oracle::Coupling> oracle_edges(const SpinGlass& sg) {
  std::vector<oracle::Coupling> e;
  for (const auto& x : sg.edges()) e.push_back({x.a, x.b, x.j.value()});
  return e;
}

// 1. Norm, energy and parity conservation.
Outcome conservation() {
  double worst_norm = 0.0, worst_energy = 0.0, worst_parity = 0.0;
  const int runs = 10;
  for (int r = 0; r < runs; ++r) {
    auto rng = make_stream(101, {static_cast<std::uint64_t>(r)});
    const int n = 3 + r % 6;
    const double lambda = 0.6 * uniform01(rng);
    auto inst = generate_instance(n, rng());
    EvolveOptions opts;
    // A quarter of the default step. The state never leaves its parity
    // sector, so the parity drift is twice the norm drift, and at lambda
    // near 0.6 (n_max past 40) the default step leaves a norm drift of a few
    // 1e-9.
    opts.propagation = {50.0, 0.00125, 1.0, Integrator::kRk4};
    opts.record_entanglement = false;
    auto traj = cool_quantum(inst.spin_glass, inst.initial_config, lambda, opts);
    const auto& first = traj.records.front();
    for (const auto& rec : traj.records) {
      worst_norm = std::max(worst_norm, std::fabs(rec.norm - 1.0));
      worst_energy = std::max(worst_energy, std::fabs(rec.energy - first.energy) / std::fabs(first.energy));
      worst_parity = std::max(worst_parity, std::abs(rec.parity - first.parity));
    }
  }
  Outcome o;
  o.pass = worst_norm < tol::kNormDrift && worst_energy < tol::kEnergyDrift &&
           worst_parity < tol::kParityDrift;
  o.detail = "runs=10 norm_drift=" + fmt("%.2e", worst_norm) + " energy_drift=" + fmt("%.2e", worst_energy) +
             " parity_drift=" + fmt("%.2e", worst_parity);
  return o;
}

// 2. Sparse RK4 evolution against a dense matrix exponential.
Outcome oracle_equivalence() {
  std::vector<SpinGlass> glasses;
  glasses.emplace_back(2, std::vector<HalfInt>{HalfInt::from_twice(1), HalfInt::from_twice(-2)},
                       std::vector<Edge>{{0, 1, HalfInt::from_twice(-1)}});
  glasses.push_back(generate_instance(3, 7).spin_glass);
  glasses.push_back(generate_instance(4, 11).spin_glass);
  double worst = 0.0;
  const int n_max = 6;
  const double lambda = 0.4;
  for (const auto& sg : glasses) {
    auto h = build_total(sg, BathSpec{n_max, 1.0}, CouplingSpec{lambda});
    ObservableSet obs(sg, 0);
    auto psi0 = initial_state(sg, Config{0}, BathSpec{n_max, 1.0});
    EvolveOptions opts;
    opts.propagation = {10.0, 0.005, 1.0, Integrator::kRk4};
    opts.truncation_tol = 1.0;
    auto traj = evolve(h, psi0, obs, opts);
    auto dense = oracle::total_hamiltonian(oracle_fields(sg), oracle_edges(sg), n_max, 1.0, lambda);
    oracle::CVec ref = oracle::expm_apply(dense, psi0.amplitudes, 10.0);
    worst = std::max(worst, (traj.final_state.amplitudes - ref).cwiseAbs().maxCoeff());
  }
  return {worst < tol::kOracleState, "n_s=2,3,4 t=10 max_state_error=" + fmt("%.2e", worst)};
}

// 3. Three-level master equation against its closed form.
Outcome three_level() {
  const double lambda = 0.2;
  double worst = 0.0;
  for (double kappa : {0.0, 0.05, 2.0}) {
    auto num = three_level_numeric(lambda, kappa, 50.0, 0.001, 0.05);
    for (std::size_t i = 0; i < num.t.size(); ++i)
      worst = std::max(worst, std::fabs(num.rho22[i] - three_level_analytic(lambda, kappa, num.t[i])));
  }
  // Cooled probability 1 - rho22 against the overdamped exponential, after
  // the fast transient (t >> 1/kappa).
  const double kappa = 10.0 * lambda;
  auto num = three_level_numeric(lambda, kappa, 50.0, 0.001, 0.05);
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < num.t.size(); ++i) {
    if (num.t[i] < 10.0) continue;
    const double p = 1.0 - num.rho22[i];
    const double ref = 1.0 - three_level_overdamped(lambda, kappa, num.t[i]);
    worst_rel = std::max(worst_rel, std::fabs(p - ref) / ref);
  }
  return {worst < tol::kThreeLevel && worst_rel < tol::kOverdamped,
          "max_abs_rho22_error=" + fmt("%.2e", worst) + " overdamped_rel_error(t in [10,50])=" +
              fmt("%.3f", worst_rel)};
}

// 4. Master equation at kappa = 0 against Schroedinger evolution.
Outcome closed_limit() {
  double worst = 0.0;
  for (int n : {3, 4}) {
    auto inst = generate_instance(n, 40 + n);
    const auto& sg = inst.spin_glass;
    const int n_max = 24;
    auto h = build_total(sg, BathSpec{n_max, 1.0}, CouplingSpec{0.3});
    ObservableSet obs(sg, inst.initial_config);
    auto psi0 = initial_state(sg, inst.initial_config, BathSpec{n_max, 1.0});
    EvolveOptions eo;
    eo.propagation = {10.0, 0.005, 0.1, Integrator::kRk4};
    eo.record_entanglement = false;
    auto traj = evolve(h, psi0, obs, eo);
    MasterOptions mo;
    mo.t_final = 10.0;
    mo.dt = 0.005;
    mo.sample_interval = 0.1;
    auto master = evolve_master(h, 0.0, DensityMatrix::pure(psi0.amplitudes), &sg, mo);
    for (std::size_t i = 0; i < master.t.size(); ++i)
      worst = std::max(worst, std::fabs(master.p_ground[i] - traj.records[i].p_ground));
  }
  return {worst < tol::kClosedLimit, "n_s=3,4 t=10 max_P_g_difference=" + fmt("%.2e", worst)};
}

// 5. Quantum bath beats the classical ensemble on the two-minima instance.
Outcome quantum_vs_classical() {
  bool pass = true;
  std::ostringstream os;
  for (int n : {7, 9, 11}) {
    auto inst = build_two_minima_instance(n, (n + 1) / 2);
    const auto& sg = inst.spin_glass;
    EvolveOptions eo;
    eo.propagation = {15.0, 0.005, 0.05, Integrator::kChebyshev};
    eo.record_entanglement = false;
    auto q = cool_quantum(sg, inst.initial_config, 0.2, eo);
    ObservableSet obs(sg, inst.initial_config);
    SemiclassicalOptions so;
    so.t_final = 15.0;
    so.sample_interval = 0.05;
    EnsembleOptions ens;
    ens.samples = 200;
    ens.seed = 5000 + n;
    auto c = ensemble_average(sg, 0.2, spin_basis_state(inst.initial_config, n), obs, so, ens);
    auto qt = q.times();
    auto qp = q.column_p_ground();
    const double q_avg = time_average(qt, qp);
    const double c_avg = time_average(c.t, c.p_ground);
    double best_ratio = 0.0;
    bool rise = false;
    for (std::size_t i = 0; i < qp.size() && i < c.p_ground.size(); ++i) {
      if (qp[i] > tol::kRiseFactor * c.p_ground[i] && qp[i] > 0.0) rise = true;
      if (c.p_ground[i] > 0.0) best_ratio = std::max(best_ratio, qp[i] / c.p_ground[i]);
    }
    const bool ok = q_avg > c_avg && rise;
    pass = pass && ok;
    os << "n_s=" << n << " quantum_avg=" << fmt("%.4g", q_avg) << " classical_avg=" << fmt("%.4g", c_avg)
       << " max_ratio=" << fmt("%.3g", best_ratio) << (ok ? "" : " (fails)") << "; ";
  }
  return {pass, os.str()};
}

// 6. Decoherence slows early cooling.
Outcome decoherence_order() {
  auto inst = generate_instance(5, 5);
  const auto& sg = inst.spin_glass;
  const int n_max = 12;
  auto h = build_total(sg, BathSpec{n_max, 1.0}, CouplingSpec{0.6});
  auto psi0 = initial_state(sg, inst.initial_config, BathSpec{n_max, 1.0});
  MasterOptions mo;
  mo.t_final = 5.0;
  mo.dt = 0.005;
  mo.sample_interval = 0.05;
  std::vector<std::vector<double>> pg;
  for (double kappa : {0.0, 0.05, 0.2})
    pg.push_back(evolve_master(h, kappa, DensityMatrix::pure(psi0.amplitudes), &sg, mo).p_ground);
  int ordered = 0, total = 0;
  for (std::size_t i = 1; i < pg[0].size(); ++i) {
    ++total;
    if (pg[0][i] > pg[1][i] && pg[1][i] > pg[2][i]) ++ordered;
  }
  const double frac = static_cast<double>(ordered) / total;
  return {frac >= tol::kKappaOrderFraction,
          "n_s=5 lambda=0.6 ordered_fraction=" + fmt("%.3f", frac) + " of " + std::to_string(total) + " samples"};
}

// 7. Trotter error of the walk factorisation is third order.
Outcome trotter_order() {
  const std::vector<double> dts{0.1, 0.05, 0.025};
  std::vector<double> e1, e3;
  SpinGlass sg3(3, {HalfInt::from_twice(1), HalfInt::from_twice(0), HalfInt::from_twice(-1)},
                {{0, 1, HalfInt::from_twice(-1)}, {1, 2, HalfInt::from_twice(1)}});
  for (double dt : dts) {
    e1.push_back(decomposition_error(0.2, dt, 10));
    e3.push_back(multi_qubit_walker(sg3, 0.2, dt, 8).error);
  }
  const double s1 = log_log_fit(dts, e1).slope;
  const double s3 = log_log_fit(dts, e3).slope;
  const bool ok = std::fabs(s1 - tol::kTrotterSlope) <= tol::kTrotterSlopeBand &&
                  std::fabs(s3 - tol::kTrotterSlope) <= tol::kTrotterSlopeBand;
  return {ok, "slope_single=" + fmt("%.3f", s1) + " slope_three_qubit=" + fmt("%.3f", s3)};
}

// 8. Ballistic coherent walk, diffusive dephased control.
Outcome walk_exponents() {
  auto spread = walk_spread(hadamard_lambda(), 1.0, 50);
  const bool ok = std::fabs(spread.coherent_exponent - tol::kBallistic) <= tol::kExponentBand &&
                  std::fabs(spread.dephased_exponent - tol::kDiffusive) <= tol::kExponentBand;
  return {ok, "coherent=" + fmt("%.3f", spread.coherent_exponent) +
                  " dephased=" + fmt("%.3f", spread.dephased_exponent)};
}

// 9. Aligned spins with a bath at rest are a fixed point.
Outcome classical_fixed_point() {
  auto inst = generate_instance(5, 9);
  const auto& sg = inst.spin_glass;
  ObservableSet obs(sg, 0);
  SemiclassicalOptions so;
  so.t_final = 20.0;
  so.sample_interval = 0.1;
  double worst = 0.0;
  for (Config k : {Config{0}, Config{31}}) {
    CVector psi0 = spin_basis_state(k, 5);
    auto tr = evolve_semiclassical(sg, 0.2, psi0, ClassicalBathState{0.0, 0.0}, obs, so);
    for (std::size_t i = 0; i < tr.t.size(); ++i)
      worst = std::max({worst, std::fabs(tr.q[i]), std::fabs(tr.phi[i])});
    RVector pop = tr.final_spin_state.cwiseAbs2();
    RVector pop0 = psi0.cwiseAbs2();
    worst = std::max(worst, (pop - pop0).cwiseAbs().maxCoeff());
  }
  return {worst < tol::kFixedPoint, "t=20 max_deviation=" + fmt("%.2e", worst)};
}

// 10. Hybrid loop: monotone accepted energy and success rate.
Outcome hybrid_loop() {
  int success = 0, monotone = 0;
  const int runs = 100;
  for (int s = 0; s < runs; ++s) {
    auto inst = generate_instance(7, 3000 + s);
    HybridConfig cfg;
    cfg.lambda = 0.2;
    cfg.t_cool = 20.0;
    cfg.max_iterations = 50;
    cfg.seed = static_cast<std::uint64_t>(s);
    auto trace = run_hybrid(inst, cfg);
    bool mono = trace.final_energy <= trace.initial_energy;
    double current = trace.initial_energy;
    for (const auto& it : trace.iterations) {
      if (it.energy_s1 > current) mono = false;
      current = it.accepted ? it.energy_s3 : it.energy_s1;
      if (it.accepted && it.energy_s3 > it.energy_s1) mono = false;
    }
    monotone += mono;
    success += trace.reached_threshold;
  }
  const double rate = static_cast<double>(success) / runs;
  return {monotone == runs && rate >= tol::kHybridSuccess,
          "n_s=7 runs=100 monotone=" + std::to_string(monotone) + " success_rate=" + fmt("%.2f", rate)};
}

// 11. Complexity exponent of the cooling time.
Outcome complexity_exponent() {
  ComplexityConfig cfg;
  cfg.n_min = 5;
  cfg.n_max = 11;
  cfg.graphs_per_size = 20;
  cfg.lambda = 0.2;
  cfg.seed = 2026;
  auto rep = complexity_sweep(cfg);
  std::ostringstream os;
  os << "excluded=" << rep.excluded << "/" << rep.runs.size();
  for (const auto& pt : rep.points) os << " n" << pt.n_spins << ":" << pt.t_bar.size();
  if (!rep.valid) return {false, os.str() + " slope=undefined (fewer than two sizes with usable fits)"};
  os << " slope=" << fmt("%.4f", rep.slope) << " stderr=" << fmt("%.4f", rep.slope_stderr);
  return {std::fabs(rep.slope - tol::kComplexitySlope) <= tol::kComplexityBand, os.str()};
}

// 12. Relaxation fit round trip.
Outcome bessel_fit() {
  double worst_clean = 0.0, worst_noisy = 0.0;
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto [pr, tau] : std::vector<std::pair<double, double>>{{0.6, 3.0}, {0.25, 8.0}, {0.9, 1.2}}) {
    std::vector<double> t, p, pn;
    for (int i = 0; i <= 200; ++i) {
      t.push_back(0.25 * i);
      p.push_back(pr * (1.0 - oracle::bessel_j(0, t.back() / tau)));
      pn.push_back(p.back() + 0.01 * pr * noise(rng));
    }
    auto fit = fit_relaxation(t, p);
    worst_clean = std::max({worst_clean, std::fabs(fit.p_r - pr) / pr, std::fabs(fit.tau - tau) / tau});
    auto fn = fit_relaxation(t, pn);
    worst_noisy = std::max({worst_noisy, std::fabs(fn.p_r - pr) / pr, std::fabs(fn.tau - tau) / tau});
  }
  return {worst_clean < tol::kFitNoiseless && worst_noisy < tol::kFitNoisy,
          "noiseless_rel_error=" + fmt("%.2e", worst_clean) + " noisy_rel_error=" + fmt("%.3f", worst_noisy)};
}

// 13. Entanglement grows with coupling and vanishes without it.
Outcome entanglement() {
  auto inst = build_two_minima_instance(7, 4);
  const auto& sg = inst.spin_glass;
  EvolveOptions eo;
  eo.propagation = {15.0, 0.005, 0.1, Integrator::kRk4};
  std::map<double, std::pair<double, double>> avg;
  double zero_s = 0.0, zero_c = 0.0;
  for (double lambda : {0.2, 0.15, 0.0}) {
    auto traj = cool_quantum(sg, inst.initial_config, lambda, eo);
    std::vector<double> t, s, c;
    for (const auto& r : traj.records) {
      t.push_back(r.t);
      s.push_back(r.entropy);
      c.push_back(std::fabs(r.correlation));
      if (lambda == 0.0) {
        zero_s = std::max(zero_s, std::fabs(r.entropy));
        zero_c = std::max(zero_c, std::fabs(r.correlation));
      }
    }
    avg[lambda] = {time_average(t, s), time_average(t, c)};
  }
  const bool ok = avg[0.2].first > avg[0.15].first && avg[0.2].second > avg[0.15].second &&
                  zero_s <= tol::kEntanglementZero && zero_c <= tol::kEntanglementZero;
  return {ok, "S(0.2)=" + fmt("%.4g", avg[0.2].first) + " S(0.15)=" + fmt("%.4g", avg[0.15].first) +
                  " |C|(0.2)=" + fmt("%.4g", avg[0.2].second) + " |C|(0.15)=" + fmt("%.4g", avg[0.15].second) +
                  " max_S(0)=" + fmt("%.1e", zero_s) + " max_|C|(0)=" + fmt("%.1e", zero_c)};
}

// 14. Continuous double well: quantum bath lowers more and oscillates more.
Outcome continuous_wells() {
  ContinuousSystem sys{ContinuousParams{}};
  const double lambda = kDefaultContinuousLambda;
  ContinuousOptions opts;
  opts.t_final = 30.0;
  opts.sample_interval = 0.1;
  opts.record_density = false;
  RVector psi0 = sys.initial_wavefunction();
  auto q = evolve_continuous_quantum(sys, BathSpec{8, 1.0}, lambda, psi0, opts);
  EnsembleOptions ens;
  ens.samples = 200;
  ens.seed = 14;
  auto c = continuous_classical_ensemble(sys, lambda, psi0, opts, ens);
  const double q_avg = time_average(q.t, q.p_lower);
  const double c_avg = time_average(c.mean.t, c.mean.p_lower);
  const double q_dd = max_drawdown(q.p_lower);
  const double c_dd = max_drawdown(c.mean.p_lower);
  const bool ok = q_avg > c_avg && q_dd >= tol::kDrawdownFactor * c_dd;
  return {ok, "quantum_avg=" + fmt("%.4f", q_avg) + " classical_avg=" + fmt("%.4f", c_avg) +
                  " quantum_drawdown=" + fmt("%.4f", q_dd) + " classical_drawdown=" + fmt("%.4f", c_dd)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  set_warnings_enabled(false);
  const std::vector<Criterion> all{
      {1, "conservation", conservation},
      {2, "oracle_equivalence", oracle_equivalence},
      {3, "three_level_lindblad", three_level},
      {4, "closed_system_limit", closed_limit},
      {5, "quantum_vs_classical", quantum_vs_classical},
      {6, "decoherence_order", decoherence_order},
      {7, "trotter_order", trotter_order},
      {8, "walk_exponents", walk_exponents},
      {9, "classical_fixed_point", classical_fixed_point},
      {10, "hybrid_loop", hybrid_loop},
      {11, "complexity_exponent", complexity_exponent},
      {12, "bessel_fit", bessel_fit},
      {13, "entanglement", entanglement},
      {14, "continuous_wells", continuous_wells},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %-22s %s  %s  [%.1fs]\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}

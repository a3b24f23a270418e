// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "experiments.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>

#include <json.hpp>

#include "icebox/classical_bath.hpp"
#include "icebox/complexity.hpp"
#include "icebox/composite_state.hpp"
#include "icebox/continuous.hpp"
#include "icebox/error.hpp"
#include "icebox/hybrid.hpp"
#include "icebox/lindblad.hpp"
#include "icebox/observables.hpp"
#include "icebox/qwalk.hpp"
#include "icebox/three_level.hpp"
#include "icebox/trajectory.hpp"

namespace icebox::cli {

namespace fs = std::filesystem;

namespace {

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

  void file(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw InputError("cannot write " + (dir_ / name).string());
    body(out);
    if (!out) throw InputError("write failed for " + (dir_ / name).string());
    outputs_.push_back(name);
  }

  void text(const std::string& name, const std::string& s) {
    file(name, [&](std::ostream& o) { o << s << '\n'; });
  }

  std::vector<std::string> take() { return std::move(outputs_); }

 private:
  fs::path dir_;
  std::vector<std::string> outputs_;
};

// "quantum.csv" for a single value, "quantum_lambda_0.15.csv" otherwise.
std::string tagged(const std::string& stem, const char* key, double value, bool single, const char* ext) {
  if (single) return stem + ext;
  char buf[64];
  std::snprintf(buf, sizeof buf, "_%s_%g", key, value);
  return stem + buf + ext;
}

void cool_quantum_run(const ExperimentConfig& c, const ProblemInstance& inst, Writer& w, int workers) {
  const auto& sg = inst.spin_glass;
  const bool single = c.lambdas.size() == 1;
  for (double lambda : c.lambdas) {
    EvolveOptions eo;
    eo.propagation = c.propagation;
    eo.record_entanglement = c.record_entanglement;
    auto traj = cool_quantum(sg, inst.initial_config, lambda, eo, c.n_max);
    w.file(tagged("quantum", "lambda", lambda, single, ".csv"), [&](std::ostream& o) { write_trajectory_csv(o, traj); });
    if (c.samples > 0) {
      ObservableSet obs(sg, inst.initial_config);
      SemiclassicalOptions so;
      so.t_final = c.propagation.t_final;
      so.dt = c.propagation.dt;
      so.sample_interval = c.propagation.sample_interval;
      EnsembleOptions ens;
      ens.samples = c.samples;
      ens.seed = c.seed;
      ens.workers = workers;
      auto res = ensemble_average(sg, lambda, spin_basis_state(inst.initial_config, sg.n_spins()), obs, so, ens);
      w.file(tagged("classical", "lambda", lambda, single, ".csv"),
             [&](std::ostream& o) { write_ensemble_csv(o, res, sg.n_spins()); });
      w.text(tagged("classical", "lambda", lambda, single, ".json"), ensemble_metadata_json(res));
    }
  }
}

void cool_classical_run(const ExperimentConfig& c, const ProblemInstance& inst, Writer& w, int workers) {
  const auto& sg = inst.spin_glass;
  const bool single = c.lambdas.size() == 1;
  ObservableSet obs(sg, inst.initial_config);
  SemiclassicalOptions so;
  so.t_final = c.propagation.t_final;
  so.dt = c.propagation.dt;
  so.sample_interval = c.propagation.sample_interval;
  for (double lambda : c.lambdas) {
    EnsembleOptions ens;
    ens.samples = c.samples;
    ens.seed = c.seed;
    ens.workers = workers;
    auto res = ensemble_average(sg, lambda, spin_basis_state(inst.initial_config, sg.n_spins()), obs, so, ens);
    w.file(tagged("classical", "lambda", lambda, single, ".csv"),
           [&](std::ostream& o) { write_ensemble_csv(o, res, sg.n_spins()); });
    w.text(tagged("classical", "lambda", lambda, single, ".json"), ensemble_metadata_json(res));
  }
}

void lindblad_run(const ExperimentConfig& c, const ProblemInstance& inst, Writer& w) {
  const auto& sg = inst.spin_glass;
  const BathSpec bath{c.n_max, 1.0};
  auto h = build_total(sg, bath, CouplingSpec{c.lambdas.front()});
  auto psi0 = initial_state(sg, inst.initial_config, bath);
  MasterOptions mo;
  mo.t_final = c.propagation.t_final;
  mo.dt = c.propagation.dt;
  mo.sample_interval = c.propagation.sample_interval;
  const bool single = c.kappas.size() == 1;
  for (double kappa : c.kappas) {
    auto tr = evolve_master(h, kappa, DensityMatrix::pure(psi0.amplitudes), &sg, mo);
    w.file(tagged("master", "kappa", kappa, single, ".csv"), [&](std::ostream& o) { write_master_csv(o, tr); });
    if (c.three_level) {
      auto num = three_level_numeric(c.three_level_lambda, kappa, c.propagation.t_final, 0.001,
                                     c.propagation.sample_interval);
      w.file(tagged("three_level", "kappa", kappa, single, ".csv"), [&](std::ostream& o) {
        o << "t,rho22_numeric,rho22_analytic,P_sg\n" << std::setprecision(12);
        for (std::size_t i = 0; i < num.t.size(); ++i) {
          const double a = three_level_analytic(c.three_level_lambda, kappa, num.t[i]);
          o << num.t[i] << ',' << num.rho22[i] << ',' << a << ',' << 1.0 - a << '\n';
        }
      });
    }
  }
}

void hybrid_run(const ExperimentConfig& c, const ProblemInstance& inst, Writer& w) {
  HybridConfig hc;
  hc.lambda = c.lambdas.front();
  hc.t_cool = c.t_cool;
  hc.max_iterations = c.max_iterations;
  hc.seed = c.seed;
  hc.n_max = c.n_max;
  hc.propagation.dt = c.propagation.dt;
  if (c.start) hc.start = icebox::parse_config(*c.start, inst.spin_glass.n_spins());
  auto trace = run_hybrid(inst, hc);
  w.file("hybrid.csv", [&](std::ostream& o) { write_hybrid_csv(o, trace); });
  nlohmann::json s;
  s["seed_config"] = format_config_hex(trace.seed_config);
  s["initial_energy"] = trace.initial_energy;
  s["final_config"] = format_config_hex(trace.final_config);
  s["final_energy"] = trace.final_energy;
  s["threshold"] = trace.threshold;
  s["reached_threshold"] = trace.reached_threshold;
  s["budget_exhausted"] = trace.budget_exhausted;
  s["iterations"] = trace.iterations.size();
  w.text("hybrid_summary.json", s.dump(2));
}

void continuous_run(const ExperimentConfig& c, Writer& w, int workers) {
  ContinuousParams p;
  p.n_grid = c.n_grid;
  p.quad_weight = c.quad_weight;
  p.cos_amplitude = c.cos_amplitude;
  p.kinetic = c.kinetic;
  p.target_gap = c.target_gap;
  p.margin = c.margin;
  ContinuousSystem sys{p};
  ContinuousOptions o;
  o.t_final = c.propagation.t_final;
  o.dt = c.propagation.dt;
  o.sample_interval = c.propagation.sample_interval;
  o.record_density = c.record_density;
  const double lambda = c.lambdas.front();
  RVector psi0 = sys.initial_wavefunction();
  w.text("continuous.json", continuous_metadata_json(sys, lambda));
  auto q = evolve_continuous_quantum(sys, BathSpec{c.n_max, 1.0}, lambda, psi0, o);
  w.file("continuous_quantum.csv", [&](std::ostream& s) { write_continuous_csv(s, q); });
  if (c.record_density) w.file("density_quantum.csv", [&](std::ostream& s) { write_density_csv(s, q); });
  if (c.samples > 0) {
    EnsembleOptions ens;
    ens.samples = c.samples;
    ens.seed = c.seed;
    ens.workers = workers;
    auto cl = continuous_classical_ensemble(sys, lambda, psi0, o, ens);
    w.file("continuous_classical.csv", [&](std::ostream& s) { write_continuous_csv(s, cl.mean); });
    if (c.record_density) w.file("density_classical.csv", [&](std::ostream& s) { write_density_csv(s, cl.mean); });
  }
}

void complexity_run(const ExperimentConfig& c, Writer& w, int workers) {
  ComplexityConfig cc;
  cc.n_min = c.n_min;
  cc.n_max = c.n_max_spins;
  cc.graphs_per_size = c.graphs_per_size;
  cc.lambda = c.lambdas.front();
  cc.seed = c.seed;
  cc.t_final = c.propagation.t_final;
  cc.dt = c.propagation.dt;
  cc.sample_interval = c.propagation.sample_interval;
  cc.integrator = c.propagation.integrator;
  cc.workers = workers;
  auto rep = complexity_sweep(cc);
  w.text("complexity_report.json", complexity_report_json(rep));
  w.file("complexity_runs.csv", [&](std::ostream& o) { write_complexity_runs_csv(o, rep); });
}

}  // namespace

ProblemInstance make_instance(const InstanceSpec& want) {
  switch (want.source) {
    case InstanceSpec::Source::kGenerate: return generate_instance(want.n_spins, want.seed, want.fields);
    case InstanceSpec::Source::kTwoMinima: return build_two_minima_instance(want.n_spins, want.gap);
    case InstanceSpec::Source::kFile: return load_instance(want.path);
  }
  throw ConfigError("unknown instance source");
}

RunResult run_experiment(const ExperimentConfig& c, const fs::path& out_dir, int workers) {
  fs::create_directories(out_dir);
  Writer w(out_dir);
  std::optional<ProblemInstance> inst;
  if (c.instance) {
    inst = make_instance(*c.instance);
    w.text("instance.json", instance_to_json(*inst));
  }
  switch (c.kind) {
    case Kind::kCoolQuantum: cool_quantum_run(c, *inst, w, workers); break;
    case Kind::kCoolClassical: cool_classical_run(c, *inst, w, workers); break;
    case Kind::kLindblad: lindblad_run(c, *inst, w); break;
    case Kind::kHybrid: hybrid_run(c, *inst, w); break;
    case Kind::kContinuous: continuous_run(c, w, workers); break;
    case Kind::kQwalk: w.text("qwalk_report.json", hadamard_report_json(hadamard_condition_check(c.n_max, c.steps))); break;
    case Kind::kComplexity: complexity_run(c, w, workers); break;
  }
  return {w.take()};
}

}  // namespace icebox::cli

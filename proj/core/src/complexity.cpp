// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/complexity.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "icebox/error.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/observables.hpp"
#include "icebox/parallel.hpp"
#include "icebox/stats.hpp"

namespace icebox {

void cooling_trace(const ProblemInstance& inst, double lambda, const PropagationOptions& prop,
                   std::vector<double>& t, std::vector<double>& p_ground) {
  const auto& sg = inst.spin_glass;
  ObservableSet obs(sg, inst.initial_config);
  int n_max = default_n_max(sg.n_spins());
  for (int attempt = 0;; ++attempt) {
    t.clear();
    p_ground.clear();
    auto h = build_total(sg, BathSpec{n_max, 1.0}, CouplingSpec{lambda});
    const int nf = n_max + 1;
    CVector psi0 = CVector::Zero(h.dimension());
    psi0(static_cast<Eigen::Index>(inst.initial_config) * nf) = 1.0;
    try {
      propagate(h, psi0, prop, [&](double time, const CVector& psi) {
        Eigen::Map<const CMatrix> amp(psi.data(), nf, h.system_dim());
        double top = amp.row(nf - 1).squaredNorm();
        if (top > 1e-6) throw EvolutionError("top Fock level populated", time, top);
        RVector marginal = amp.cwiseAbs2().colwise().sum().transpose();
        t.push_back(time);
        p_ground.push_back(obs.ground_probability(marginal));
      });
      return;
    } catch (const EvolutionError&) {
      if (attempt >= 6) throw;
      n_max = grown_n_max(n_max);
    }
  }
}

ComplexityReport regress_complexity(std::vector<ComplexityPoint> points) {
  ComplexityReport rep;
  std::vector<double> x, y;
  double total = 0.0, sum_x = 0.0;
  for (auto& pt : points) {
    if (pt.t_bar.empty()) continue;
    std::vector<double> logs;
    for (double v : pt.t_bar) logs.push_back(std::log2(v));
    pt.mean_log_t = mean(logs);
    x.push_back(pt.n_spins);
    y.push_back(pt.mean_log_t);
    total += static_cast<double>(logs.size());
    sum_x += static_cast<double>(logs.size()) * pt.n_spins;
  }
  if (x.size() >= 2) {
    auto fit = linear_fit(x, y);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.valid = true;
    const double xbar = sum_x / total;
    double ss_res = 0.0, sxx = 0.0;
    for (auto& pt : points) {
      if (pt.t_bar.empty()) continue;
      const double line = fit.slope * pt.n_spins + fit.intercept;
      double s = 0.0;
      for (double v : pt.t_bar) s += (std::log2(v) - line) * (std::log2(v) - line);
      pt.std = std::sqrt(s / static_cast<double>(pt.t_bar.size()));
      ss_res += s;
      sxx += static_cast<double>(pt.t_bar.size()) * (pt.n_spins - xbar) * (pt.n_spins - xbar);
    }
    if (total > 2.0 && sxx > 0.0) rep.slope_stderr = std::sqrt(ss_res / (total - 2.0) / sxx);
  }
  for (const auto& pt : points) rep.excluded += pt.excluded;
  rep.points = std::move(points);
  return rep;
}

ComplexityReport complexity_sweep(const ComplexityConfig& cfg) {
  if (cfg.n_min < 3 || cfg.n_max < cfg.n_min) throw ConfigError("invalid qubit range for the sweep");
  if (cfg.graphs_per_size < 1) throw ConfigError("graphs_per_size must be positive");
  const int sizes = cfg.n_max - cfg.n_min + 1;
  const std::size_t jobs = static_cast<std::size_t>(sizes) * cfg.graphs_per_size;
  std::vector<ComplexityRun> runs(jobs);
  PropagationOptions prop{cfg.t_final, cfg.dt, cfg.sample_interval, cfg.integrator};

  // Largest sizes first so the tail of the queue is short.
  parallel_for(
      jobs,
      [&](std::size_t j) {
        const std::size_t idx = jobs - 1 - j;
        ComplexityRun run;
        run.n_spins = cfg.n_min + static_cast<int>(idx / cfg.graphs_per_size);
        run.graph = static_cast<int>(idx % cfg.graphs_per_size);
        auto rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(run.n_spins),
                                          static_cast<std::uint64_t>(run.graph)});
        run.instance_seed = rng();
        auto inst = generate_instance(run.n_spins, run.instance_seed, cfg.fields);
        run.links = static_cast<int>(inst.spin_glass.edges().size());
        std::vector<double> t, p;
        cooling_trace(inst, cfg.lambda, prop, t, p);
        try {
          run.fit = fit_relaxation(t, p);
          run.t_bar = average_running_time(run.fit, std::ldexp(1.0, run.n_spins));
        } catch (const FitError&) {
          run.excluded = true;
        } catch (const WildGuessError&) {
          run.excluded = true;
        }
        runs[idx] = run;
      },
      cfg.workers);

  std::vector<ComplexityPoint> points;
  for (int s = 0; s < sizes; ++s) {
    ComplexityPoint pt;
    pt.n_spins = cfg.n_min + s;
    pt.n_states = std::ldexp(1.0, pt.n_spins);
    double links = 0.0;
    for (int g = 0; g < cfg.graphs_per_size; ++g) {
      const auto& run = runs[static_cast<std::size_t>(s) * cfg.graphs_per_size + g];
      links += 2.0 * run.links / pt.n_spins;
      if (run.excluded) {
        ++pt.excluded;
      } else {
        pt.t_bar.push_back(run.t_bar);
      }
    }
    pt.mean_links_per_qubit = links / cfg.graphs_per_size;
    pt.flagged = pt.excluded > cfg.max_excluded_fraction * cfg.graphs_per_size;
    points.push_back(std::move(pt));
  }
  auto rep = regress_complexity(std::move(points));
  rep.runs = std::move(runs);
  return rep;
}

std::string complexity_report_json(const ComplexityReport& rep) {
  nlohmann::json j;
  j["slope"] = rep.valid ? nlohmann::json(rep.slope) : nlohmann::json(nullptr);
  j["intercept"] = rep.valid ? nlohmann::json(rep.intercept) : nlohmann::json(nullptr);
  j["slope_stderr"] = rep.slope_stderr;
  j["valid"] = rep.valid;
  j["excluded"] = rep.excluded;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& pt : rep.points) {
    nlohmann::json p{{"n_s", pt.n_spins},
                     {"N_s", pt.n_states},
                     {"mean_logT", pt.t_bar.empty() ? nlohmann::json(nullptr) : nlohmann::json(pt.mean_log_t)},
                     {"std", pt.std},
                     {"runs", pt.t_bar.size()},
                     {"excluded", pt.excluded},
                     {"flagged", pt.flagged},
                     {"mean_links_per_qubit", pt.mean_links_per_qubit}};
    pts.push_back(p);
  }
  j["points"] = pts;
  j["iteration_factor"] =
      "T-bar counts one cooling invocation; a full hybrid solve multiplies it by the number of "
      "outer iterations, modelled as polynomial in n_s and not measured here";
  return j.dump(2);
}

void write_complexity_runs_csv(std::ostream& out, const ComplexityReport& rep) {
  out << "n_s,graph,P_r,tau,T_bar,excluded,residual\n" << std::setprecision(12);
  for (const auto& r : rep.runs) {
    out << r.n_spins << ',' << r.graph << ',' << r.fit.p_r << ',' << r.fit.tau << ',';
    if (r.excluded) {
      out << "nan";
    } else {
      out << r.t_bar;
    }
    out << ',' << (r.excluded ? 1 : 0) << ',' << r.fit.residual << '\n';
  }
}

}  // namespace icebox

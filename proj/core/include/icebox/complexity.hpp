// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "icebox/instance.hpp"
#include "icebox/propagator.hpp"
#include "icebox/relaxation_fit.hpp"

namespace icebox {

struct ComplexityConfig {
  int n_min = 5;
  int n_max = 11;
  int graphs_per_size = 20;
  double lambda = 0.2;
  std::uint64_t seed = 0;
  double t_final = 50.0;
  double dt = 0.005;
  double sample_interval = 0.25;
  Integrator integrator = Integrator::kChebyshev;
  FieldPlacement fields = FieldPlacement::kFirstQubit;
  int workers = 0;
  double max_excluded_fraction = 0.2;
};

struct ComplexityRun {
  int n_spins = 0;
  int graph = 0;
  std::uint64_t instance_seed = 0;
  RelaxationFit fit;
  double t_bar = 0.0;
  bool excluded = false;
  int links = 0;
};

struct ComplexityPoint {
  int n_spins = 0;
  double n_states = 0.0;
  std::vector<double> t_bar;
  double mean_log_t = 0.0;
  // Spread of log2 T about the regression line at this size.
  double std = 0.0;
  int excluded = 0;
  bool flagged = false;
  double mean_links_per_qubit = 0.0;
};

struct ComplexityReport {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool valid = false;
  std::vector<ComplexityPoint> points;
  std::vector<ComplexityRun> runs;
  int excluded = 0;
};

// Regression of mean log2 T against log2 N_s = n_s from per-size T samples.
ComplexityReport regress_complexity(std::vector<ComplexityPoint> points);

ComplexityReport complexity_sweep(const ComplexityConfig& cfg);

// Cooling trace of one instance (P_g sampled from 0 to t_final).
void cooling_trace(const ProblemInstance& inst, double lambda, const PropagationOptions& prop,
                   std::vector<double>& t, std::vector<double>& p_ground);

std::string complexity_report_json(const ComplexityReport& report);
void write_complexity_runs_csv(std::ostream& out, const ComplexityReport& report);

}  // namespace icebox

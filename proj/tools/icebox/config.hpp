// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icebox/instance.hpp"
#include "icebox/propagator.hpp"

namespace icebox::cli {

enum class Kind { kCoolQuantum, kCoolClassical, kLindblad, kHybrid, kContinuous, kQwalk, kComplexity };

const char* kind_name(Kind k);

struct InstanceSpec {
  enum class Source { kGenerate, kTwoMinima, kFile };
  Source source = Source::kGenerate;
  int n_spins = 0;
  std::uint64_t seed = 0;
  int gap = 0;
  std::string path;
  FieldPlacement fields = FieldPlacement::kFirstQubit;
};

struct ExperimentConfig {
  Kind kind = Kind::kCoolQuantum;
  std::uint64_t seed = 0;
  std::string output_dir;
  nlohmann::json raw;

  std::optional<InstanceSpec> instance;
  std::vector<double> lambdas;
  PropagationOptions propagation;
  int n_max = -1;
  bool record_entanglement = true;

  // classical ensemble (cool_classical, or alongside cool_quantum)
  int samples = 0;

  // lindblad
  std::vector<double> kappas;
  bool three_level = false;
  double three_level_lambda = 0.2;

  // hybrid
  double t_cool = 20.0;
  int max_iterations = 50;
  std::optional<std::string> start;

  // continuous
  int n_grid = 0;
  double quad_weight = 0.0;
  double cos_amplitude = 0.0;
  double kinetic = 0.0;
  double target_gap = 0.0;
  double margin = 0.0;
  bool record_density = true;

  // qwalk
  int steps = 50;

  // complexity
  int n_min = 5;
  int n_max_spins = 11;
  int graphs_per_size = 20;
};

// Throws ConfigError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

}  // namespace icebox::cli

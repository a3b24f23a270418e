// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace icebox::cli {

struct RunResult {
  // Paths relative to the output directory.
  std::vector<std::string> outputs;
};

RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, int workers);

ProblemInstance make_instance(const InstanceSpec& want);

}  // namespace icebox::cli

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace icebox {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  // Root-mean-square residual.
  double residual = 0.0;
};

// Ordinary least squares y = slope x + intercept; needs two distinct x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);
// Fit of log y against log x.
LinearFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_stddev(const std::vector<double>& v);

}  // namespace icebox

// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "icebox/hamiltonian.hpp"
#include "icebox/types.hpp"

namespace icebox {

struct LowSpectrum {
  RVector values;
  RMatrix vectors;  // columns
  int iterations = 0;
};

// Lowest `count` eigenpairs of a real symmetric matrix. Dense up to
// `dense_limit`, shift-invert Lanczos above it.
LowSpectrum lowest_eigenpairs(const RSparse& h, int count, double tol = 1e-10,
                              Eigen::Index dense_limit = 8192);

// For each of the `count` lowest eigenstates, the largest Fock-marginalised
// probability of a single spin configuration.
std::vector<double> low_eigenstate_localization(const SparseHamiltonian& h, int count);

}  // namespace icebox

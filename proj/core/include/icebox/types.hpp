// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace icebox {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using CSparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Spin configuration packed into an integer. Bit m set means qubit m is
// down (s_m = -1); cleared means up (s_m = +1).
using Config = std::uint64_t;

inline constexpr Complex kI{0.0, 1.0};

inline int spin_value(Config k, int m) { return ((k >> m) & 1U) ? -1 : 1; }

}  // namespace icebox

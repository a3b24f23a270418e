// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/eigen_tools.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "icebox/error.hpp"

namespace icebox {

namespace {

LowSpectrum dense_lowest(const RSparse& h, int count) {
  RMatrix dense = RMatrix(h);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(dense);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");
  LowSpectrum out;
  out.values = es.eigenvalues().head(count);
  out.vectors = es.eigenvectors().leftCols(count);
  return out;
}

LowSpectrum lanczos_lowest(const RSparse& h, int count, double tol) {
  const Eigen::Index n = h.rows();
  double lo = 0.0;
  {
    lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < h.outerSize(); ++i) {
      double d = 0.0, r = 0.0;
      for (RSparse::InnerIterator it(h, i); it; ++it) {
        if (it.col() == i) {
          d = it.value();
        } else {
          r += std::fabs(it.value());
        }
      }
      lo = std::min(lo, d - r);
    }
  }
  const double sigma = lo - 1.0;
  Eigen::SparseMatrix<double> shifted = Eigen::SparseMatrix<double>(h);
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= sigma;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) throw ConvergenceError("shift-invert factorisation failed");

  int m = static_cast<int>(std::min<Eigen::Index>(n, std::max(4 * count, count + 40)));
  double worst = 0.0;
  for (int round = 0; round < 6; ++round) {
    RMatrix v(n, m + 1);
    RVector alpha(m), beta(m);
    RVector start = RVector::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) start(i) += 0.01 * std::sin(1.0 + 3.7 * static_cast<double>(i));
    v.col(0) = start.normalized();
    int steps = m;
    for (int j = 0; j < m; ++j) {
      RVector w = solver.solve(v.col(j));
      alpha(j) = v.col(j).dot(w);
      // two passes of full reorthogonalisation
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      beta(j) = w.norm();
      if (beta(j) < 1e-14) {
        steps = j + 1;
        break;
      }
      v.col(j + 1) = w / beta(j);
    }
    RMatrix t = RMatrix::Zero(steps, steps);
    for (int j = 0; j < steps; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
    const int k = std::min(count, steps);
    LowSpectrum out;
    out.values.resize(k);
    out.vectors.resize(n, k);
    out.iterations = steps;
    worst = 0.0;
    for (int i = 0; i < k; ++i) {
      // largest eigenvalues of the inverse are the lowest of h
      int col = steps - 1 - i;
      RVector x = v.leftCols(steps) * es.eigenvectors().col(col);
      x.normalize();
      double theta = x.dot(h * x);
      double res = (h * x - theta * x).norm();
      worst = std::max(worst, res / std::max(1.0, std::fabs(theta)));
      out.values(i) = theta;
      out.vectors.col(i) = x;
    }
    if (worst <= tol && k == count) return out;
    if (m >= n) break;
    m = static_cast<int>(std::min<Eigen::Index>(n, 2 * m));
  }
  throw ConvergenceError("shift-invert Lanczos: residual " + std::to_string(worst) +
                         " above tolerance after " + std::to_string(m) + " iterations");
}

}  // namespace

LowSpectrum lowest_eigenpairs(const RSparse& h, int count, double tol, Eigen::Index dense_limit) {
  if (count < 1 || count > h.rows()) throw InputError("eigenpair count out of range");
  if (h.rows() <= dense_limit) return dense_lowest(h, count);
  return lanczos_lowest(h, count, tol);
}

std::vector<double> low_eigenstate_localization(const SparseHamiltonian& h, int count) {
  auto low = lowest_eigenpairs(h.matrix(), count);
  std::vector<double> out;
  const Eigen::Index nf = h.fock_dim();
  for (Eigen::Index i = 0; i < low.vectors.cols(); ++i) {
    Eigen::Map<const RMatrix> amp(low.vectors.col(i).data(), nf, h.system_dim());
    out.push_back(amp.cwiseAbs2().colwise().sum().maxCoeff());
  }
  return out;
}

}  // namespace icebox

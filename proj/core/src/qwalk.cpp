// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/qwalk.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <json.hpp>

#include "icebox/error.hpp"
#include "icebox/hamiltonian.hpp"
#include "icebox/stats.hpp"

namespace icebox {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// exp(-i s G) for Hermitian G.
CMatrix exp_hermitian(const CMatrix& g, double s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  CVector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(Complex(0.0, -s * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

enum class Pauli { kX, kY, kZ };

// Single-qubit Pauli on qubit m of an n-qubit register (bit set = down).
CMatrix pauli_on(int n_spins, int m, Pauli p) {
  const Eigen::Index ds = Eigen::Index{1} << n_spins;
  CMatrix out = CMatrix::Zero(ds, ds);
  for (Eigen::Index k = 0; k < ds; ++k) {
    const bool down = (k >> m) & 1;
    const Eigen::Index kf = k ^ (Eigen::Index{1} << m);
    switch (p) {
      case Pauli::kX:
        out(kf, k) = 1.0;
        break;
      case Pauli::kY:
        out(kf, k) = down ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        break;
      case Pauli::kZ:
        out(k, k) = down ? -1.0 : 1.0;
        break;
    }
  }
  return out;
}

CMatrix ladder_down(int n_max) {
  CMatrix b = CMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

}  // namespace

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double WalkOperators::error() const { return spectral_norm(exact - factored()); }

double WalkOperators::unitarity_error() const {
  double worst = 0.0;
  for (const CMatrix* u : {&exact, &u0, &up, &uh}) {
    CMatrix id = CMatrix::Identity(u->rows(), u->cols());
    worst = std::max(worst, ((*u).adjoint() * (*u) - id).cwiseAbs().maxCoeff());
  }
  return worst;
}

WalkOperators build_walk_operators(const SpinGlass& sg, double lambda, double dt, int n_max, double omega) {
  if (sg.n_spins() > 6) throw ConfigError("dense walk operators limited to 6 qubits");
  if (n_max < 1) throw ConfigError("n_max must be at least 1");
  const int n = sg.n_spins();
  const Eigen::Index ds = Eigen::Index{1} << n;
  const int nf = n_max + 1;

  WalkOperators w;
  auto h = build_total(sg, BathSpec{n_max, omega}, CouplingSpec{lambda});
  w.exact = exp_hermitian(CMatrix(RMatrix(h.matrix()).cast<Complex>()), dt);

  CVector d0(ds * nf);
  for (Eigen::Index k = 0; k < ds; ++k) {
    for (int m = 0; m < nf; ++m) {
      d0(k * nf + m) = std::exp(Complex(0.0, -dt * (sg.energy(static_cast<Config>(k)) + omega * (m + 0.5))));
    }
  }
  w.u0 = d0.asDiagonal();

  CMatrix b = ladder_down(n_max);
  CMatrix q = Complex(0.0, 0.5) * (b.adjoint() - b);
  CMatrix phi = 0.5 * (b.adjoint() + b);
  CMatrix sy = CMatrix::Zero(ds, ds);
  CMatrix sx = CMatrix::Zero(ds, ds);
  for (int m = 0; m < n; ++m) {
    sy += pauli_on(n, m, Pauli::kY);
    sx += sg.on_site()[m].value() * pauli_on(n, m, Pauli::kX);
  }
  for (const auto& e : sg.edges()) {
    sx += e.j.value() * (pauli_on(n, e.a, Pauli::kX) * pauli_on(n, e.b, Pauli::kZ) +
                         pauli_on(n, e.a, Pauli::kZ) * pauli_on(n, e.b, Pauli::kX));
  }
  CMatrix a = 2.0 * dt * sy + 2.0 * dt * dt * sx;
  w.up = exp_hermitian(kron(a, q), lambda);
  w.uh = exp_hermitian(kron(sy, phi), -lambda * omega * dt * dt);
  return w;
}

double decomposition_error(double lambda, double dt, int n_max) {
  SpinGlass sg(1, {HalfInt::from_twice(1)}, {});
  return build_walk_operators(sg, lambda, dt, n_max).error();
}

MultiQubitWalk multi_qubit_walker(const SpinGlass& sg, double lambda, double dt, int n_max) {
  auto w = build_walk_operators(sg, lambda, dt, n_max);
  return {w.factored(), w.error()};
}

CMatrix parity_operator(int n_spins, int n_max) {
  const Eigen::Index ds = Eigen::Index{1} << n_spins;
  const int nf = n_max + 1;
  CVector d(ds * nf);
  for (Eigen::Index k = 0; k < ds; ++k) {
    for (int m = 0; m < nf; ++m) d(k * nf + m) = parity_of(static_cast<Config>(k), m, n_spins);
  }
  return d.asDiagonal();
}

Eigen::Matrix3d walk_basis_rotation() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix3d rot;
  // columns: sigma'_x, sigma'_y, sigma'_z
  rot << -r, 0.0, r,   // sigma_x = (sigma'_z - sigma'_x) / sqrt2
      r, 0.0, r,       // sigma_y = (sigma'_z + sigma'_x) / sqrt2
      0.0, 1.0, 0.0;   // sigma_z = sigma'_y
  return rot;
}

double on_site_phase_deviation(const SpinGlass& sg, int n_max, double dt,
                               const std::vector<Eigen::Index>& indices) {
  const int nf = n_max + 1;
  if (indices.empty()) return 0.0;
  std::vector<Complex> phases;
  Complex avg{0.0, 0.0};
  for (auto i : indices) {
    Config k = static_cast<Config>(i / nf);
    int m = static_cast<int>(i % nf);
    Complex p = std::exp(Complex(0.0, -dt * (sg.energy(k) + (m + 0.5))));
    phases.push_back(p);
    avg += p;
  }
  Complex c = std::abs(avg) > 0.0 ? avg / std::abs(avg) : Complex(1.0, 0.0);
  double worst = 0.0;
  for (auto p : phases) worst = std::max(worst, std::abs(p - c));
  return worst;
}

WalkSpread walk_spread(double lambda, double omega, int steps, int fit_from) {
  if (steps < 2 || fit_from < 1 || fit_from >= steps) throw ConfigError("walk needs fit_from < steps");
  const int half = steps + 2;
  const int sites = 2 * half + 1;
  // Coin exp(i theta sigma_y) written in the primed basis, where sigma_y is
  // the Hadamard axis; theta advances by 8 sqrt2 lambda^2 / omega^2 per site.
  const double per_site = 8.0 * std::sqrt(2.0) * lambda * lambda / (omega * omega);
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd had;
  had << r, r, r, -r;
  std::vector<Eigen::Matrix2cd> coin(sites);
  for (int s = 0; s < sites; ++s) {
    double theta = 0.5 * M_PI + per_site * (s - half);
    coin[s] = std::cos(theta) * Eigen::Matrix2cd::Identity() + Complex(0.0, std::sin(theta)) * had;
  }

  // amplitudes [site][coin], coin 0 = sigma'_z = +1 moves right
  std::vector<Eigen::Vector2cd> amp(sites, Eigen::Vector2cd::Zero());
  amp[half] << r, Complex(0.0, r);
  std::vector<Eigen::Vector2d> prob(sites, Eigen::Vector2d::Zero());
  prob[half] << 0.5, 0.5;

  auto sigma_of = [&](auto weight) {
    double m1 = 0.0, m2 = 0.0;
    for (int s = 0; s < sites; ++s) {
      double w = weight(s);
      m1 += w * (s - half);
      m2 += w * (s - half) * (s - half);
    }
    return std::sqrt(std::max(m2 - m1 * m1, 0.0));
  };

  WalkSpread out;
  for (int t = 1; t <= steps; ++t) {
    std::vector<Eigen::Vector2cd> next(sites, Eigen::Vector2cd::Zero());
    std::vector<Eigen::Vector2d> pnext(sites, Eigen::Vector2d::Zero());
    for (int s = 1; s + 1 < sites; ++s) {
      Eigen::Vector2cd c = coin[s] * amp[s];
      next[s + 1](0) += c(0);
      next[s - 1](1) += c(1);
      Eigen::Matrix2d tp = coin[s].cwiseAbs2();
      Eigen::Vector2d pc = tp * prob[s];
      pnext[s + 1](0) += pc(0);
      pnext[s - 1](1) += pc(1);
    }
    amp.swap(next);
    prob.swap(pnext);
    out.steps.push_back(t);
    out.coherent_sigma.push_back(sigma_of([&](int s) { return amp[s].squaredNorm(); }));
    out.dephased_sigma.push_back(sigma_of([&](int s) { return prob[s].sum(); }));
  }
  std::vector<double> x, yc, yd;
  for (int t = fit_from; t <= steps; ++t) {
    x.push_back(t);
    yc.push_back(out.coherent_sigma[t - 1]);
    yd.push_back(out.dephased_sigma[t - 1]);
  }
  out.coherent_exponent = log_log_fit(x, yc).slope;
  out.dephased_exponent = log_log_fit(x, yd).slope;
  return out;
}

HadamardReport hadamard_condition_check(int n_max, int steps) {
  HadamardReport rep;
  rep.lambda = hadamard_lambda();
  rep.omega = 1.0;
  rep.dt = 2.0 / rep.omega;
  const double lam = rep.lambda, w = rep.omega, dt = rep.dt;

  rep.rotation = walk_basis_rotation();
  rep.rotation_det = rep.rotation.determinant();
  rep.rotation_orthogonality_error =
      (rep.rotation * rep.rotation.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();

  // Pauli matrices of the primed frame.
  Eigen::Matrix2cd px, py, pz;
  px << 0, 1, 1, 0;
  py << 0, Complex(0, -1), Complex(0, 1), 0;
  pz << 1, 0, 0, -1;
  auto primed = [&](int row) {
    return Eigen::Matrix2cd(rep.rotation(row, 0) * px + rep.rotation(row, 1) * py + rep.rotation(row, 2) * pz);
  };
  Eigen::Matrix2cd sy = primed(1);
  // Coin at angle pi/2: exp(i pi/2 sigma_y) = i sigma_y.
  Eigen::Matrix2cd coin = Complex(0.0, 1.0) * sy;
  Eigen::Matrix2cd had = (px + pz) / std::sqrt(2.0);
  Complex overlap = (had.adjoint() * coin).trace() / 2.0;
  Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  rep.coin_residual = (coin - phase * had).cwiseAbs().maxCoeff();

  // Translation axis 2 dt sigma_y + omega dt^2 sigma_x in primed coordinates.
  Eigen::Vector3d axis = 2.0 * dt * rep.rotation.row(1).transpose() + w * dt * dt * rep.rotation.row(0).transpose();
  rep.displacement = 0.5 * lam * axis.norm();
  rep.translation_axis_residual = (axis.normalized() - Eigen::Vector3d(0.0, 0.0, 1.0)).norm();
  rep.coin_angle_per_site = 4.0 * lam * rep.displacement / w;

  rep.error = decomposition_error(lam, dt, n_max);
  rep.slope_dts = {0.1, 0.05, 0.025};
  for (double h : rep.slope_dts) rep.slope_errors.push_back(decomposition_error(lam, h, n_max));
  rep.slope = log_log_fit(rep.slope_dts, rep.slope_errors).slope;
  rep.spread = walk_spread(lam, w, steps);

  rep.notes = {
      "factors derived with H = H0 + 2 lambda q sum sigma_y and [phi, q] = i/2; the opposite sign "
      "convention corresponds to lambda -> -lambda",
      "multi-qubit translation includes 2 dt^2 (sum J1 sigma_x + sum J2 (sigma_x sigma_z + sigma_z sigma_x))",
      "basis rotation sigma_x = (s'_z - s'_x)/sqrt2, sigma_y = (s'_z + s'_x)/sqrt2, sigma_z = s'_y",
      "coin equals i times the Hadamard gate at angle pi/2 modulo pi; the coin angle advances by "
      "2 pi per lattice site at this lambda",
      "U0 enters the lattice walk as a global phase (degenerate resonance); the dephased walk "
      "measures the coin in the primed basis after every step",
  };
  return rep;
}

std::string hadamard_report_json(const HadamardReport& rep) {
  nlohmann::json j;
  j["lambda"] = rep.lambda;
  j["dt"] = rep.dt;
  j["error"] = rep.error;
  j["slope"] = rep.slope;
  j["exponents"] = {{"coherent", rep.spread.coherent_exponent}, {"dephased", rep.spread.dephased_exponent}};
  j["slope_dts"] = rep.slope_dts;
  j["slope_errors"] = rep.slope_errors;
  j["displacement"] = rep.displacement;
  j["coin_angle_per_site"] = rep.coin_angle_per_site;
  j["coin_residual"] = rep.coin_residual;
  j["translation_axis_residual"] = rep.translation_axis_residual;
  std::vector<std::vector<double>> rot(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) rot[i][k] = rep.rotation(i, k);
  }
  j["rotation"] = rot;
  j["rotation_det"] = rep.rotation_det;
  j["coherent_sigma"] = rep.spread.coherent_sigma;
  j["dephased_sigma"] = rep.spread.dephased_sigma;
  j["notes"] = rep.notes;
  return j.dump(2);
}

}  // namespace icebox

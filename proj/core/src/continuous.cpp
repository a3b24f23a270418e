// Copyright 2026 The icebox Authors
// SPDX-License-Identifier: Apache-2.0

#include "icebox/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "icebox/error.hpp"
#include "icebox/parallel.hpp"
#include "icebox/propagator.hpp"

namespace icebox {

namespace {

struct Well {
  double x;
  double v;
};

double potential_value(const ContinuousParams& p, double offset, double x) {
  return p.quad_weight * (x - offset) * (x - offset) - p.cos_amplitude * std::cos(x);
}

double potential_slope(const ContinuousParams& p, double offset, double x) {
  return 2.0 * p.quad_weight * (x - offset) + p.cos_amplitude * std::sin(x);
}

// Minima of V: roots of V' where V' changes sign from - to +. They lie within
// cos_amplitude / (2 quad_weight) of the offset.
std::vector<Well> find_wells(const ContinuousParams& p, double offset) {
  const double reach = p.cos_amplitude / (2.0 * p.quad_weight) + 1.0;
  const double lo = offset - reach, hi = offset + reach;
  const int n = static_cast<int>(std::ceil((hi - lo) / 1e-3));
  std::vector<Well> wells;
  double x0 = lo, s0 = potential_slope(p, offset, x0);
  for (int i = 1; i <= n; ++i) {
    double x1 = lo + (hi - lo) * i / n;
    double s1 = potential_slope(p, offset, x1);
    if (s0 < 0.0 && s1 >= 0.0) {
      double a = x0, b = x1;
      for (int it = 0; it < 80; ++it) {
        double m = 0.5 * (a + b);
        if (potential_slope(p, offset, m) < 0.0) {
          a = m;
        } else {
          b = m;
        }
      }
      double xm = 0.5 * (a + b);
      wells.push_back({xm, potential_value(p, offset, xm)});
    }
    x0 = x1;
    s0 = s1;
  }
  return wells;
}

}  // namespace

double solve_offset(const ContinuousParams& p) {
  if (p.quad_weight <= 0.0 || p.cos_amplitude <= 0.0) {
    throw ConfigError("double well needs positive quadratic weight and cosine amplitude");
  }
  // Right well minus left well; zero at offset = pi by symmetry, decreasing
  // as the offset moves right.
  auto gap = [&](double offset) {
    auto w = find_wells(p, offset);
    if (w.size() != 2) return std::numeric_limits<double>::quiet_NaN();
    return w[1].v - w[0].v;
  };
  double a = M_PI, b = M_PI;
  double target = -p.target_gap;
  double gb = gap(b);
  while (!(gb <= target)) {
    b += 0.05;
    gb = gap(b);
    if (b > 3.0 * M_PI || std::isnan(gb)) {
      throw ConfigError("no two-well offset reaches the requested gap of " +
                        std::to_string(p.target_gap));
    }
    if (gb > target) a = b;
  }
  for (int it = 0; it < 100; ++it) {
    double m = 0.5 * (a + b);
    double gm = gap(m);
    if (std::isnan(gm)) throw ConfigError("potential lost its double-well shape while solving the offset");
    if (gm > target) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

ContinuousSystem::ContinuousSystem(const ContinuousParams& params) : params_(params) {
  if (params_.n_grid < 64) throw ConfigError("n_grid must be at least 64");
  if (params_.kinetic <= 0.0) throw ConfigError("kinetic prefactor must be positive");
  offset_ = std::isnan(params_.offset) ? solve_offset(params_) : params_.offset;
  for (const auto& w : find_wells(params_, offset_)) wells_.push_back(w.x);
  if (wells_.empty()) throw ConfigError("potential has no well");

  double lo = params_.x_min, hi = params_.x_max;
  if (!(hi > lo)) {
    lo = wells_.front() - params_.margin * M_PI;
    hi = wells_.back() + params_.margin * M_PI;
  }
  const int n = params_.n_grid;
  dx_ = (hi - lo) / (n - 1);
  x_ = RVector::LinSpaced(n, lo, hi);
  v_.resize(n);
  for (int i = 0; i < n; ++i) v_(i) = potential_value(params_, offset_, x_(i));

  // Fourth-order central differences, stencil entries beyond the walls dropped.
  std::vector<Eigen::Triplet<double>> th, td;
  const double c2 = -params_.kinetic / (12.0 * dx_ * dx_);
  const double c1 = 1.0 / (12.0 * dx_);
  for (int i = 0; i < n; ++i) {
    th.emplace_back(i, i, c2 * -30.0 + v_(i));
    for (int off : {-2, -1, 1, 2}) {
      int j = i + off;
      if (j < 0 || j >= n) continue;
      th.emplace_back(i, j, c2 * (std::abs(off) == 1 ? 16.0 : -1.0));
      double d = (off == 1) ? 8.0 : (off == -1) ? -8.0 : (off == 2) ? -1.0 : 1.0;
      td.emplace_back(i, j, c1 * d);
    }
  }
  h_.resize(n, n);
  h_.setFromTriplets(th.begin(), th.end());
  h_.makeCompressed();
  d1_.resize(n, n);
  d1_.setFromTriplets(td.begin(), td.end());
  d1_.makeCompressed();

  Eigen::SelfAdjointEigenSolver<RMatrix> es{RMatrix(h_)};
  if (es.info() != Eigen::Success) throw ConvergenceError("grid Hamiltonian eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();

  // A single well (no cosine term) starts from its ground state.
  if (wells_.size() == 1) {
    initial_index_ = 0;
    if (evecs_.col(0).sum() < 0.0) evecs_.col(0) *= -1.0;
    return;
  }
  // Higher of the two outer wells and its basin up to the barrier.
  auto vf = [&](double x) { return potential_value(params_, offset_, x); };
  const bool left_high = vf(wells_.front()) > vf(wells_.back());
  const double high = left_high ? wells_.front() : wells_.back();
  const double other = left_high ? wells_[1] : wells_[wells_.size() - 2];
  double barrier = 0.5 * (high + other);
  {
    // maximum of V between the two wells
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s <= 2000; ++s) {
      double x = high + (other - high) * s / 2000.0;
      if (vf(x) > best) {
        best = vf(x);
        barrier = x;
      }
    }
  }
  const double a = left_high ? high - M_PI : barrier;
  const double b = left_high ? barrier : high + M_PI;
  initial_index_ = -1;
  for (int k = 0; k < n && initial_index_ < 0; ++k) {
    double w = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x_(i) > a && x_(i) < b) w += evecs_(i, k) * evecs_(i, k);
    }
    if (w > params_.basin_weight) initial_index_ = k;
  }
  if (initial_index_ < 0) throw ConfigError("no eigenstate is localised in the higher well");
  if (evecs_.col(initial_index_).sum() < 0.0) evecs_.col(initial_index_) *= -1.0;
}

double ContinuousSystem::potential_at(double x) const { return potential_value(params_, offset_, x); }

double max_drawdown(const std::vector<double>& values) {
  double peak = -std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (double v : values) {
    peak = std::max(peak, v);
    worst = std::max(worst, peak - v);
  }
  return worst;
}

namespace {

// Shared bookkeeping: projections onto lower eigenstates, density, checks.
class ContinuousRecorder {
 public:
  ContinuousRecorder(const ContinuousSystem& sys, const ContinuousOptions& opts)
      : sys_(sys), opts_(opts) {
    const double e0 = sys.initial_energy();
    int count = 0;
    while (count < sys.eigenvalues().size() && sys.eigenvalues()(count) < e0 - 1e-9) ++count;
    lower_ = sys.eigenvectors().leftCols(count);
    below_.resize(sys.n_grid());
    for (int i = 0; i < sys.n_grid(); ++i) below_[i] = sys.potential()(i) < e0;
  }

  // amp: nf x n_grid (nf = 1 for the classical bath)
  void record(double t, const Eigen::Ref<const CMatrix>& amp, double energy, ContinuousTrajectory& out) {
    RVector density = amp.cwiseAbs2().colwise().sum().transpose();
    out.t.push_back(t);
    CMatrix proj = amp * lower_.cast<Complex>();
    out.p_lower.push_back(proj.cwiseAbs2().sum());
    double pv = 0.0;
    for (int i = 0; i < sys_.n_grid(); ++i) {
      if (below_[i]) pv += density(i);
    }
    out.p_lower_potential.push_back(pv);
    out.norm.push_back(std::sqrt(density.sum()));
    out.energy.push_back(energy);
    if (opts_.record_density) {
      out.density.emplace_back(density.data(), density.data() + density.size());
    }
    const int nb = std::min(opts_.boundary_points, sys_.n_grid() / 2);
    double edge = density.head(nb).sum() + density.tail(nb).sum();
    if (edge > opts_.boundary_tol) {
      throw EvolutionError("wavefunction weight " + std::to_string(edge) +
                               " reached the grid walls at t = " + std::to_string(t) +
                               "; widen the grid",
                           t, edge);
    }
  }

 private:
  const ContinuousSystem& sys_;
  const ContinuousOptions& opts_;
  RMatrix lower_;
  std::vector<char> below_;
};

double pick_dt(double requested, double radius) {
  if (requested > 0.0) return requested;
  return std::min(0.005, 1.5 / std::max(radius, 1e-12));
}

}  // namespace

ContinuousTrajectory evolve_continuous_quantum(const ContinuousSystem& sys, const BathSpec& bath,
                                               double lambda, const RVector& psi0,
                                               const ContinuousOptions& opts) {
  if (psi0.size() != sys.n_grid()) throw InputError("initial wavefunction does not match the grid");
  auto h = build_composite(sys.hamiltonian(), sys.derivative(), -lambda, bath);
  const int nf = bath.n_max + 1;
  CVector start = CVector::Zero(h.dimension());
  for (int i = 0; i < sys.n_grid(); ++i) start(static_cast<Eigen::Index>(i) * nf) = psi0(i);
  start /= start.norm();

  double lo = 0.0, hi = 0.0;
  h.spectral_bounds(lo, hi);
  const double shift = h.expectation(start);
  PropagationOptions prop;
  prop.t_final = opts.t_final;
  prop.dt = pick_dt(opts.dt, std::max(std::fabs(hi - shift), std::fabs(lo - shift)));
  prop.sample_interval = opts.sample_interval;

  ContinuousRecorder rec(sys, opts);
  ContinuousTrajectory out;
  propagate(h, start, prop, [&](double t, const CVector& psi) {
    Eigen::Map<const CMatrix> amp(psi.data(), nf, sys.n_grid());
    double top = amp.row(nf - 1).squaredNorm();
    if (top > opts.truncation_tol) {
      throw EvolutionError("population of the top Fock level reached " + std::to_string(top) +
                               "; rerun with a larger n_max",
                           t, top);
    }
    rec.record(t, amp, h.expectation(psi), out);
  });
  return out;
}

ContinuousTrajectory evolve_continuous_classical(const ContinuousSystem& sys, double lambda,
                                                 const RVector& psi0,
                                                 const ClassicalBathState& bath0,
                                                 const ContinuousOptions& opts, double omega) {
  if (psi0.size() != sys.n_grid()) throw InputError("initial wavefunction does not match the grid");
  const RSparse& hs = sys.hamiltonian();
  const RSparse& d1 = sys.derivative();
  SparseHamiltonian hop(hs, sys.n_grid(), 0);
  double lo = 0.0, hi = 0.0;
  hop.spectral_bounds(lo, hi);

  SparseHamiltonian dop(d1, sys.n_grid(), 0);
  CVector psi = psi0.cast<Complex>();
  psi /= psi.norm();
  const double shift = hop.expectation(psi);
  // Spectral radius of H_s - shift plus the coupling term for |q| up to 3.
  const double coupling_radius = 2.0 * lambda * 3.0 * 1.5 / sys.dx();
  const double dt_req =
      pick_dt(opts.dt, std::max(std::fabs(hi - shift), std::fabs(lo - shift)) + coupling_radius);
  double q = bath0.q, phi = bath0.phi;

  // <p> with p = -i d/dx
  auto p_mean = [&](const CVector& x) {
    CVector dx;
    dop.apply(x, dx);
    return (Complex(0.0, -1.0) * x.dot(dx)).real();
  };
  CVector hx, dxv;
  auto rhs = [&](const CVector& x, double qq, double pp, CVector& dpsi, double& dq, double& dphi) {
    hop.apply(x, hx);
    dop.apply(x, dxv);
    // -i (H_s - shift) x + 2 lambda q d/dx x
    dpsi = Complex(0.0, -1.0) * (hx - shift * x) + (2.0 * lambda * qq) * dxv;
    double pm = (Complex(0.0, -1.0) * x.dot(dxv)).real();
    dq = -omega * pp;
    dphi = omega * qq - lambda * pm;
  };

  ContinuousRecorder rec(sys, opts);
  ContinuousTrajectory out;
  auto energy = [&]() {
    return hop.expectation(psi) + omega * (q * q + phi * phi) - 2.0 * lambda * q * p_mean(psi);
  };
  auto record = [&](double t) {
    Eigen::Map<const CMatrix> amp(psi.data(), 1, sys.n_grid());
    rec.record(t, amp, energy(), out);
  };

  record(0.0);
  CVector k1, k2, k3, k4, tmp;
  double q1, q2, q3, q4, f1, f2, f3, f4;
  const int samples = sample_count(opts.t_final, opts.sample_interval);
  double t = 0.0;
  for (int j = 1; j < samples; ++j) {
    double t_next = std::min(j * opts.sample_interval, opts.t_final);
    int steps = std::max(1, static_cast<int>(std::ceil((t_next - t) / dt_req - 1e-9)));
    double dt = (t_next - t) / steps;
    for (int s = 0; s < steps; ++s) {
      rhs(psi, q, phi, k1, q1, f1);
      tmp = psi + 0.5 * dt * k1;
      rhs(tmp, q + 0.5 * dt * q1, phi + 0.5 * dt * f1, k2, q2, f2);
      tmp = psi + 0.5 * dt * k2;
      rhs(tmp, q + 0.5 * dt * q2, phi + 0.5 * dt * f2, k3, q3, f3);
      tmp = psi + dt * k3;
      rhs(tmp, q + dt * q3, phi + dt * f3, k4, q4, f4);
      psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      q += (dt / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
      phi += (dt / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
      if (!std::isfinite(q) || !std::isfinite(phi) || std::fabs(q) > 1e3 || std::fabs(phi) > 1e3) {
        throw EvolutionError("classical bath diverged", t + (s + 1) * dt, std::max(std::fabs(q), std::fabs(phi)));
      }
    }
    t = t_next;
    record(t);
  }
  return out;
}

ContinuousEnsemble continuous_classical_ensemble(const ContinuousSystem& sys, double lambda,
                                                 const RVector& psi0, const ContinuousOptions& opts,
                                                 const EnsembleOptions& ens, double omega) {
  if (ens.samples < 1) throw ConfigError("ensemble needs at least one sample");
  std::vector<ContinuousTrajectory> runs(ens.samples);
  std::vector<char> aborted(ens.samples, 0);
  parallel_for(
      static_cast<std::size_t>(ens.samples),
      [&](std::size_t i) {
        auto rng = make_stream(ens.seed, {static_cast<std::uint64_t>(i)});
        auto bath0 = sample_initial(rng);
        try {
          runs[i] = evolve_continuous_classical(sys, lambda, psi0, bath0, opts, omega);
        } catch (const EvolutionError& e) {
          if (std::string(e.what()).find("diverged") == std::string::npos) throw;
          aborted[i] = 1;
        }
      },
      ens.workers);

  ContinuousEnsemble res;
  res.samples = ens.samples;
  std::vector<const ContinuousTrajectory*> ok;
  for (int i = 0; i < ens.samples; ++i) {
    if (aborted[i]) {
      ++res.aborts;
    } else {
      ok.push_back(&runs[i]);
    }
  }
  if (res.aborts > ens.max_abort_fraction * ens.samples || ok.empty()) {
    throw EvolutionError(std::to_string(res.aborts) + " classical trajectories diverged", 0.0,
                         static_cast<double>(res.aborts));
  }
  const std::size_t nt = ok.front()->t.size();
  const double m = static_cast<double>(ok.size());
  auto& mean = res.mean;
  mean.t = ok.front()->t;
  mean.p_lower.assign(nt, 0.0);
  mean.p_lower_potential.assign(nt, 0.0);
  mean.norm.assign(nt, 0.0);
  mean.energy.assign(nt, 0.0);
  res.p_lower_stderr.assign(nt, 0.0);
  if (opts.record_density) mean.density.assign(nt, std::vector<double>(sys.n_grid(), 0.0));
  for (const auto* r : ok) {
    for (std::size_t j = 0; j < nt; ++j) {
      mean.p_lower[j] += r->p_lower[j] / m;
      mean.p_lower_potential[j] += r->p_lower_potential[j] / m;
      mean.norm[j] += r->norm[j] / m;
      mean.energy[j] += r->energy[j] / m;
      if (opts.record_density) {
        for (int i = 0; i < sys.n_grid(); ++i) mean.density[j][i] += r->density[j][i] / m;
      }
    }
  }
  if (ok.size() > 1) {
    for (std::size_t j = 0; j < nt; ++j) {
      double s = 0.0;
      for (const auto* r : ok) s += (r->p_lower[j] - mean.p_lower[j]) * (r->p_lower[j] - mean.p_lower[j]);
      res.p_lower_stderr[j] = std::sqrt(s / (m - 1.0) / m);
    }
  }
  return res;
}

void write_density_csv(std::ostream& out, const ContinuousTrajectory& traj) {
  out << std::setprecision(10);
  const std::size_t ng = traj.density.empty() ? 0 : traj.density.front().size();
  out << 't';
  for (std::size_t i = 0; i < ng; ++i) out << ",x" << i;
  out << '\n';
  for (std::size_t j = 0; j < traj.density.size(); ++j) {
    out << traj.t[j];
    for (double v : traj.density[j]) out << ',' << v;
    out << '\n';
  }
}

void write_continuous_csv(std::ostream& out, const ContinuousTrajectory& traj) {
  out << "t,P_lower,P_lower_potential,norm,energy\n" << std::setprecision(12);
  for (std::size_t j = 0; j < traj.t.size(); ++j) {
    out << traj.t[j] << ',' << traj.p_lower[j] << ',' << traj.p_lower_potential[j] << ','
        << traj.norm[j] << ',' << traj.energy[j] << '\n';
  }
}

std::string continuous_metadata_json(const ContinuousSystem& sys, double lambda) {
  const auto& p = sys.params();
  nlohmann::json j;
  j["grid"] = {{"n_grid", sys.n_grid()},
               {"x_min", sys.grid()(0)},
               {"x_max", sys.grid()(sys.n_grid() - 1)},
               {"dx", sys.dx()}};
  j["potential"] = {{"quad_weight", p.quad_weight},
                    {"cos_amplitude", p.cos_amplitude},
                    {"offset", sys.offset()},
                    {"kinetic", p.kinetic}};
  j["wells"] = sys.well_positions();
  j["initial_energy"] = sys.initial_energy();
  j["initial_eigen_index"] = sys.initial_eigen_index();
  j["lambda"] = lambda;
  return j.dump(2);
}

}  // namespace icebox

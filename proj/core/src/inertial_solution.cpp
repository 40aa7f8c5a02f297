// Copyright 2026 The Inertia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "inertia/inertial_solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "inertia/errors.hpp"

namespace inertia {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kQuadratureTol = 1e-11;
constexpr unsigned kQuadratureDepth = 12;

template <class F>
auto integrate(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(f, a, b, kQuadratureDepth, kQuadratureTol);
}

// Fixed Gauss-Legendre rule for short sample intervals where the integrand is analytic.
template <class F>
auto integrate_interval(F f, double a, double b) {
  using boost::math::quadrature::gauss;
  return gauss<double, 15>::integrate(f, a, b);
}

// Adaptive quadrature with an absolute floor: a relative tolerance cannot be met by an
// integrand that vanishes up to roundoff.
template <class F>
double integrate_with_floor(F f, double a, double b) {
  const double probe =
      integrate_interval([&](double x) { return std::abs(f(x)); }, a, b);
  if (probe <= 1e-14 * std::abs(b - a)) {
    return integrate_interval(f, a, b);
  }
  return integrate(f, a, b);
}

// G_k . dF_k/dmu as a plain (non-conjugating) row-column product.
cplx connection(double mu, int k, Normalization basis) {
  const EigenSystem es = eigensystem(mu, basis);
  const CMat3 dp = eigenvector_derivative(mu, basis);
  return (es.p_inv.row(k) * dp.col(k))(0);
}

double kappa_omega(const ProtocolParams& params, double t, double mu_floor) {
  const double mu = mu_at(params, t);
  return std::sqrt(1.0 + mu * mu) * fields_at(params, t, mu_floor).omega_rabi;
}

void require_branch(int branch) {
  if (branch < 1 || branch > 3) {
    throw std::invalid_argument("branch must be 1, 2 or 3");
  }
}

// Imaginary part of the reconstruction relative to Omega(0).
void require_real(const CVec3& v, double omega0, double t) {
  const double residue = v.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-8 * std::abs(omega0)) {
    std::ostringstream msg;
    msg << "imaginary residue " << residue << " at t = " << t;
    throw ComplexResidue(msg.str());
  }
}

}  // namespace

double dynamical_phase(const ProtocolParams& params, double t, double mu_floor) {
  if (t == 0.0) {
    return 0.0;
  }
  const double mu_end = mu_at(params, t);
  if ((params.mu0 > 0.0) != (mu_end > 0.0)) {
    throw SingularMu("mu crosses zero on [0, t]");
  }
  return integrate([&](double s) { return kappa_omega(params, s, mu_floor); }, 0.0, t);
}

std::vector<double> dynamical_phase_series(const ProtocolParams& params,
                                           std::span<const double> times, double mu_floor) {
  std::vector<double> phase(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    phase[i] = phase[i - 1] +
               integrate_interval([&](double s) { return kappa_omega(params, s, mu_floor); },
                                  times[i - 1], times[i]);
  }
  return phase;
}

GeometricPhase geometric_phase_between(double mu_from, double mu_to, int branch,
                                       Normalization basis) {
  require_branch(branch);
  if (mu_from == mu_to) {
    return {};
  }
  if (basis == Normalization::gap_scaled && (mu_from > 0.0) != (mu_to > 0.0)) {
    throw SingularMu("gap-scaled connection is singular at mu = 0");
  }
  const int k = branch - 1;
  const double re = integrate_with_floor(
      [&](double mu) { return connection(mu, k, basis).real(); }, mu_from, mu_to);
  const double im = integrate_with_floor(
      [&](double mu) { return connection(mu, k, basis).imag(); }, mu_from, mu_to);
  // phi = i (re + i im) = -im + i re
  return {-im, re};
}

GeometricPhase geometric_phase(const ProtocolParams& params, int branch, double t,
                               Normalization basis) {
  return geometric_phase_between(params.mu0, mu_at(params, t), branch, basis);
}

PhaseLedger phase_ledger(const ProtocolParams& params, double t, bool include_geometric,
                         Normalization basis) {
  PhaseLedger ledger;
  ledger.include_geometric = include_geometric;
  const double phi = dynamical_phase(params, t);
  ledger.branches[0].dynamical = 0.0;
  ledger.branches[1].dynamical = -phi;
  ledger.branches[2].dynamical = phi;
  if (include_geometric) {
    for (int k = 1; k <= 3; ++k) {
      ledger.branches[k - 1].geometric = geometric_phase(params, k, t, basis);
    }
  }
  return ledger;
}

Trajectory inertial_propagate(const ProtocolParams& params, const LiouvilleVec& v0,
                              const IntegratorConfig& cfg, InertialOptions options) {
  require_valid(cfg);
  require_nonsingular(params, cfg.mu_floor);
  std::vector<ProtocolSample> grid = sample_grid(params, cfg.mu_floor);
  const std::vector<double> times = time_grid(params);
  const std::vector<double> phi = dynamical_phase_series(params, times, cfg.mu_floor);

  const EigenSystem start = eigensystem(params.mu0, options.basis);
  const CVec3 w0 = start.p_inv * v0.xyz().cast<cplx>();
  const double omega0 = grid.front().omega_rabi;

  // Accumulated i * integral of the connection, per branch.
  CVec3 geometric = CVec3::Zero();
  Trajectory traj;
  traj.label = TrajectoryLabel::inertial;
  traj.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ProtocolSample& s = grid[i];
    CVec3 factors{1.0, std::exp(-kI * phi[i]), std::exp(kI * phi[i])};
    if (options.include_geometric) {
      if (i > 0) {
        for (int k = 0; k < 3; ++k) {
          const double re = integrate_interval(
              [&](double mu) { return connection(mu, k, options.basis).real(); }, grid[i - 1].mu,
              s.mu);
          const double im = integrate_interval(
              [&](double mu) { return connection(mu, k, options.basis).imag(); }, grid[i - 1].mu,
              s.mu);
          geometric(k) += cplx{-im, re};
        }
      }
      for (int k = 0; k < 3; ++k) {
        factors(k) *= std::exp(kI * geometric(k));
      }
    }
    if (i == 0) {
      traj.samples.push_back({s, v0});
      continue;
    }
    const EigenSystem now = eigensystem(s.mu, options.basis);
    const CVec3 v = (s.omega_rabi / omega0) * (now.p * factors.cwiseProduct(w0));
    require_real(v, omega0, s.t);
    traj.samples.push_back({s, LiouvilleVec::from_xyz(v.real(), v0.id_coeff)});
  }
  traj.initial_energy = traj.samples.front().state.h;
  return traj;
}

std::string_view to_string(InertialVerdict verdict) {
  switch (verdict) {
    case InertialVerdict::valid:
      return "inertial-valid";
    case InertialVerdict::marginal:
      return "marginal";
    case InertialVerdict::violated:
      return "violated";
  }
  return "unknown";
}

InertialReport inertial_parameter(const ProtocolParams& params,
                                  const InertialThresholds& thresholds,
                                  std::size_t grid_points) {
  require_nonsingular(params);
  InertialReport report;
  report.mu_rate = params.delta;
  report.mu_at_max = params.mu0;
  if (params.delta != 0.0) {
    const CMat3 grad = bprime_gradient();
    const std::size_t n = std::max<std::size_t>(grid_points, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = params.t_final * static_cast<double>(i) / static_cast<double>(n - 1);
      const double mu = mu_at(params, t);
      const double rate = params.delta / fields_at(params, t).omega_rabi;
      const EigenSystem es = eigensystem(mu, Normalization::unit);
      const CMat3 coupling = es.p_inv * grad * es.p;
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 3; ++m) {
          if (k == m) {
            continue;
          }
          const double gap = es.eigenvalues[m] - es.eigenvalues[k];
          const double value = std::abs(coupling(k, m)) / (gap * gap) * rate * rate;
          if (value > report.upsilon) {
            report.upsilon = value;
            report.mu_at_max = mu;
          }
        }
      }
    }
  }
  if (report.upsilon < thresholds.valid_below) {
    report.verdict = InertialVerdict::valid;
  } else if (report.upsilon > thresholds.violated_above) {
    report.verdict = InertialVerdict::violated;
  } else {
    report.verdict = InertialVerdict::marginal;
  }
  return report;
}

CorrectionOperator correction_operator(double mu, double omega_rabi, double delta,
                                       double mu_floor) {
  if (!(std::abs(mu) >= mu_floor)) {
    throw SingularMu("correction operator is singular at mu = 0");
  }
  if (omega_rabi == 0.0) {
    throw std::invalid_argument("correction operator needs Omega != 0");
  }
  const double k2 = 1.0 + mu * mu;
  CorrectionOperator op;
  op.scalar_part = 2.0 * delta * mu / (omega_rabi * k2);
  Mat3 s;
  s << 1.0 / mu, mu, mu,
       -0.5 / mu, -mu, 0.0,
       -0.5 / mu, 0.0, -mu;
  op.s_part = (delta / (omega_rabi * k2) * s).cast<cplx>();
  op.entries = op.scalar_part * CMat3::Identity() + op.s_part;

  Eigen::ComplexEigenSolver<CMat3> solver(op.entries, false);
  for (int i = 0; i < 3; ++i) {
    op.eigenvalues[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    op.max_eigen_imag = std::max(op.max_eigen_imag, std::abs(solver.eigenvalues()(i).imag()));
  }
  return op;
}

Trajectory corrected_propagate(const ProtocolParams& params, const LiouvilleVec& v0,
                               const IntegratorConfig& cfg) {
  require_valid(cfg);
  require_nonsingular(params, cfg.mu_floor);
  std::vector<ProtocolSample> grid = sample_grid(params, cfg.mu_floor);
  const double omega0 = grid.front().omega_rabi;

  const EigenSystem start = eigensystem(params.mu0, Normalization::gap_scaled);
  CVec3 w = start.p_inv * v0.xyz().cast<cplx>();

  Trajectory traj;
  traj.label = TrajectoryLabel::corrected;
  traj.samples.reserve(grid.size());
  traj.samples.push_back({grid.front(), v0});
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double tm = 0.5 * (grid[i - 1].t + grid[i].t);
    const double mu_mid = mu_at(params, tm);
    const double dtheta = grid[i].theta - grid[i - 1].theta;
    const double kappa = std::sqrt(1.0 + mu_mid * mu_mid);
    const CorrectionOperator op =
        correction_operator(mu_mid, fields_at(params, tm, cfg.mu_floor).omega_rabi, params.delta,
                            cfg.mu_floor);
    const CMat3 amplitude = (op.entries * dtheta).exp();
    const CVec3 phase{1.0, std::exp(-kI * kappa * dtheta), std::exp(kI * kappa * dtheta)};
    w = phase.cwiseProduct(amplitude * w);

    const EigenSystem now = eigensystem(grid[i].mu, Normalization::gap_scaled);
    const CVec3 v = (grid[i].omega_rabi / omega0) * (now.p * w);
    require_real(v, omega0, grid[i].t);
    traj.samples.push_back({grid[i], LiouvilleVec::from_xyz(v.real(), v0.id_coeff)});
  }
  traj.initial_energy = v0.h;
  return traj;
}

Trajectory adiabatic_reference(const ProtocolParams& params, const LiouvilleVec& v0,
                               const IntegratorConfig& cfg) {
  const double tol = 1e-12 * std::max(1.0, std::abs(v0.h));
  if (std::abs(v0.l) > tol || std::abs(v0.c) > tol) {
    throw NotEigenstate("adiabatic reference needs an H(0) eigenstate (l = c = 0)");
  }
  require_nonsingular(params, cfg.mu_floor);
  std::vector<ProtocolSample> grid = sample_grid(params, cfg.mu_floor);
  const double omega0 = grid.front().omega_rabi;
  Trajectory traj;
  traj.label = TrajectoryLabel::adiabatic;
  traj.samples.reserve(grid.size());
  for (const ProtocolSample& s : grid) {
    const double scale = s.omega_rabi / omega0;
    traj.samples.push_back({s, {scale * v0.h, 0.0, 0.0, v0.id_coeff}});
  }
  traj.initial_energy = v0.h;
  return traj;
}

double auto_horizon(const ProtocolParams& params, double periods, double mu_floor) {
  if (!(periods > 0.0)) {
    throw std::invalid_argument("periods must be positive");
  }
  const double target = 2.0 * std::numbers::pi * periods;
  double t_limit = std::numeric_limits<double>::infinity();
  if (params.delta != 0.0 && -params.mu0 / params.delta > 0.0) {
    t_limit = -params.mu0 / params.delta;
  }
  if (std::abs(params.mu0) < mu_floor) {
    throw SingularMu("mu(0) is below the singularity floor");
  }

  auto phase = [&](double t) {
    return integrate(
        [&](double s) {
          const double mu = mu_at(params, s);
          return std::sqrt(1.0 + mu * mu) * std::abs(fields_at(params, s, mu_floor).omega_rabi);
        },
        0.0, t);
  };

  double lo = 0.0;
  double hi = std::abs(params.alpha0) > 0.0 ? 1.0 / std::abs(params.alpha0) : 1.0;
  for (int i = 0; i < 400; ++i) {
    if (hi >= t_limit) {
      // Omega diverges like 1/mu, so the phase passes any target before the pole.
      const double gap = t_limit - lo;
      hi = lo + 0.5 * gap;
    }
    if (phase(hi) >= target) {
      break;
    }
    lo = hi;
    hi *= 2.0;
    if (i == 399) {
      throw std::invalid_argument("drive never accumulates the requested phase");
    }
  }
  std::uintmax_t iterations = 200;
  const auto root = boost::math::tools::toms748_solve(
      [&](double t) { return phase(t) - target; }, lo, hi,
      boost::math::tools::eps_tolerance<double>(48), iterations);
  return 0.5 * (root.first + root.second);
}

double common_horizon(const ProtocolParams& base, std::span<const double> deltas, double periods,
                      double mu_floor) {
  if (deltas.empty()) {
    return auto_horizon(base, periods, mu_floor);
  }
  double horizon = std::numeric_limits<double>::infinity();
  for (double d : deltas) {
    horizon = std::min(horizon, auto_horizon(base.with_delta(d), periods, mu_floor));
  }
  return horizon;
}

}  // namespace inertia

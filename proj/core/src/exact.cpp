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

#include "inertia/exact.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "inertia/errors.hpp"

namespace inertia {
namespace {

using State = std::array<double, 3>;
namespace odeint = boost::numeric::odeint;

struct LiouvilleSystem {
  const ProtocolParams& params;
  double mu_floor;

  void operator()(const State& x, State& dxdt, double t) const {
    const LiouvilleVec rate = liouville_rhs(t, {x[0], x[1], x[2], 1.0}, params, mu_floor);
    dxdt = {rate.h, rate.l, rate.c};
  }
};

// exp(s M(mu)) for the antisymmetric generator, via Rodrigues' formula.
// M x = a x x with a = (-1, 0, -mu), |a| = kappa.
Mat3 rotation(double mu, double s) {
  const Mat3 m = rotation_generator(mu);
  const double kappa = std::sqrt(1.0 + mu * mu);
  const double angle = s * kappa;
  return Mat3::Identity() + (std::sin(angle) / kappa) * m +
         ((1.0 - std::cos(angle)) / (kappa * kappa)) * (m * m);
}

std::size_t substeps(double rate, double dt, double phase_step) {
  const double n = std::ceil(std::abs(rate * dt) / phase_step);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

Trajectory make_trajectory(TrajectoryLabel label, std::vector<ProtocolSample> grid,
                           const std::vector<LiouvilleVec>& states) {
  Trajectory traj;
  traj.label = label;
  traj.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    traj.samples.push_back({grid[i], states[i]});
  }
  traj.initial_energy = states.front().h;
  return traj;
}

std::vector<LiouvilleVec> adaptive_states(const ProtocolParams& params, const LiouvilleVec& v0,
                                          const std::vector<double>& times,
                                          const IntegratorConfig& cfg) {
  using Stepper = odeint::runge_kutta_dopri5<State>;
  std::vector<LiouvilleVec> out;
  out.reserve(times.size());
  State x{v0.h, v0.l, v0.c};
  const double span = times.back() - times.front();
  const double dt0 = span / static_cast<double>(times.size() - 1) * 1e-2;
  // odeint clamps to max_dt verbatim, so it must carry the direction of travel.
  const double max_dt = std::copysign(cfg.max_step > 0.0 ? cfg.max_step : std::abs(span), span);
  auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, max_dt, Stepper());
  LiouvilleSystem system{params, cfg.mu_floor};
  try {
    odeint::integrate_times(
        stepper, system, x, times.begin(), times.end(), dt0,
        [&](const State& s, double) { out.push_back({s[0], s[1], s[2], v0.id_coeff}); },
        odeint::max_step_checker(1000000));
  } catch (const odeint::odeint_error& e) {
    throw StepSizeUnderflow(std::string("adaptive Liouville integration stalled: ") + e.what());
  }
  return out;
}

std::vector<LiouvilleVec> rotation_states(const ProtocolParams& params, const LiouvilleVec& v0,
                                          const std::vector<double>& times,
                                          const IntegratorConfig& cfg) {
  std::vector<LiouvilleVec> out;
  out.reserve(times.size());
  Vec3 v = v0.xyz();
  out.push_back(v0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double ta = times[i - 1];
    const double tb = times[i];
    const double rate = std::max(std::abs(fields_at(params, ta, cfg.mu_floor).omega_rabi),
                                 std::abs(fields_at(params, tb, cfg.mu_floor).omega_rabi)) *
                        std::sqrt(1.0 + std::max(mu_at(params, ta) * mu_at(params, ta),
                                                 mu_at(params, tb) * mu_at(params, tb)));
    const std::size_t n = substeps(rate, tb - ta, cfg.phase_step);
    const double h = (tb - ta) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t0 = ta + h * static_cast<double>(k);
      const double t1 = (k + 1 == n) ? tb : t0 + h;
      const double dtheta = theta_at(params, t1, cfg.mu_floor) - theta_at(params, t0, cfg.mu_floor);
      const double scale = fields_at(params, t1, cfg.mu_floor).omega_rabi /
                           fields_at(params, t0, cfg.mu_floor).omega_rabi;
      v = scale * (rotation(mu_at(params, 0.5 * (t0 + t1)), dtheta) * v);
    }
    out.push_back(LiouvilleVec::from_xyz(v, v0.id_coeff));
  }
  return out;
}

constexpr double kSqrt3Over6 = 0.28867513459481288225;
constexpr double kGaussNode1 = 0.5 - kSqrt3Over6;
constexpr double kGaussNode2 = 0.5 + kSqrt3Over6;
constexpr double kMagnusWeightA = 0.25 + kSqrt3Over6;
constexpr double kMagnusWeightB = 0.25 - kSqrt3Over6;

// Applies exp(-i h (om sz + ep sx) / 2).
SpinorState rotate_spinor(const SpinorState& psi, double om, double ep, double h) {
  const double rabi = std::hypot(om, ep);
  if (rabi == 0.0) {
    return psi;
  }
  const double a = 0.5 * rabi * h;
  const double sa = std::sin(a);
  const double ca = std::cos(a);
  const cplx minus_i_sin{0.0, -sa};
  const cplx u00 = ca + minus_i_sin * (om / rabi);
  const cplx u11 = ca - minus_i_sin * (om / rabi);
  const cplx u01 = minus_i_sin * (ep / rabi);
  return {u00 * psi.amp0 + u01 * psi.amp1, u01 * psi.amp0 + u11 * psi.amp1};
}

}  // namespace

void require_valid(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
    throw std::invalid_argument("integrator tolerances must be positive");
  }
  if (cfg.max_step < 0.0) {
    throw std::invalid_argument("max_step must be positive (or 0 for unbounded)");
  }
  if (!(cfg.phase_step > 0.0) || cfg.phase_step > 0.05) {
    throw std::invalid_argument("phase_step must lie in (0, 0.05]");
  }
}

std::string_view to_string(TrajectoryLabel label) {
  switch (label) {
    case TrajectoryLabel::exact_liouville:
      return "exact-liouville";
    case TrajectoryLabel::exact_spinor:
      return "exact-spinor";
    case TrajectoryLabel::inertial:
      return "inertial";
    case TrajectoryLabel::corrected:
      return "corrected";
    case TrajectoryLabel::adiabatic:
      return "adiabatic";
  }
  return "unknown";
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) {
    t.push_back(s.protocol.t);
  }
  return t;
}

std::vector<ProtocolSample> sample_grid(const ProtocolParams& params, double mu_floor) {
  const std::vector<double> times = time_grid(params);
  std::vector<ProtocolSample> grid;
  grid.reserve(times.size());
  for (double t : times) {
    grid.push_back(sample_at(params, t, mu_floor));
  }
  return grid;
}

LiouvilleVec liouville_rhs(double t, const LiouvilleVec& v, const ProtocolParams& params,
                           double mu_floor) {
  const DriveFields f = fields_at(params, t, mu_floor);
  const double mu = mu_at(params, t);
  const double growth = rabi_rate_at(params, t, mu_floor) / f.omega_rabi;
  const double w = f.omega_rabi;
  LiouvilleVec rate;
  rate.h = w * mu * v.l + growth * v.h;
  rate.l = w * (-mu * v.h + v.c) + growth * v.l;
  rate.c = -w * v.l + growth * v.c;
  rate.id_coeff = 0.0;
  return rate;
}

Trajectory integrate_liouville(const ProtocolParams& params, const LiouvilleVec& v0,
                               const IntegratorConfig& cfg) {
  require_valid(cfg);
  require_nonsingular(params, cfg.mu_floor);
  std::vector<ProtocolSample> grid = sample_grid(params, cfg.mu_floor);
  const std::vector<double> times = time_grid(params);
  const std::vector<LiouvilleVec> states =
      cfg.method == IntegrationMethod::adaptive_embedded_rk
          ? adaptive_states(params, v0, times, cfg)
          : rotation_states(params, v0, times, cfg);
  return make_trajectory(TrajectoryLabel::exact_liouville, std::move(grid), states);
}

LiouvilleVec propagate_liouville(const ProtocolParams& params, const LiouvilleVec& v0,
                                 double t_start, double t_end, const IntegratorConfig& cfg) {
  require_valid(cfg);
  if (t_start == t_end) {
    return v0;
  }
  const double lo = std::min(t_start, t_end);
  const double hi = std::max(t_start, t_end);
  if ((mu_at(params, lo) > 0.0) != (mu_at(params, hi) > 0.0)) {
    throw SingularMu("mu crosses zero between t_start and t_end");
  }
  const std::vector<double> times{t_start, t_end};
  const auto states = cfg.method == IntegrationMethod::adaptive_embedded_rk
                          ? adaptive_states(params, v0, times, cfg)
                          : rotation_states(params, v0, times, cfg);
  return states.back();
}

SpinorState ground_state(double omega, double epsilon) {
  const double rabi = std::hypot(omega, epsilon);
  if (rabi < 1e-14) {
    throw DegenerateHamiltonian("Omega vanishes; the ground state is not unique");
  }
  // Spin down along n = (eps, 0, omega) / Omega, with beta the polar angle of n.
  const double beta = std::atan2(epsilon, omega);
  return {cplx{-std::sin(0.5 * beta), 0.0}, cplx{std::cos(0.5 * beta), 0.0}};
}

SpinorState initial_ground_state(const ProtocolParams& params) {
  const DriveFields f = fields_at(params, 0.0);
  return ground_state(f.omega, f.epsilon);
}

LiouvilleVec initial_ground_vector(const ProtocolParams& params) {
  return expectations_from_spinor(initial_ground_state(params), sample_at(params, 0.0));
}

Trajectory integrate_spinor(const ProtocolParams& params, const SpinorState& psi0,
                            const IntegratorConfig& cfg, const FieldNoise& noise) {
  require_valid(cfg);
  require_nonsingular(params, cfg.mu_floor);
  if (std::abs(psi0.norm_squared() - 1.0) > 1e-6) {
    throw NotNormalized("initial spinor is not normalized");
  }
  std::vector<ProtocolSample> grid = sample_grid(params, cfg.mu_floor);
  const std::vector<double> times = time_grid(params);

  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<LiouvilleVec> states;
  states.reserve(times.size());
  SpinorState psi = psi0;
  states.push_back(expectations_from_spinor(psi, grid.front()));

  for (std::size_t i = 1; i < times.size(); ++i) {
    const double ta = times[i - 1];
    const double tb = times[i];
    double omega_factor = 1.0;
    double epsilon_factor = 1.0;
    if (noise.relative_sigma > 0.0) {
      omega_factor += noise.relative_sigma * gauss(rng);
      epsilon_factor += noise.relative_sigma * gauss(rng);
    }
    const double field_rate = 0.5 * std::max(std::abs(grid[i - 1].omega_rabi),
                                             std::abs(grid[i].omega_rabi)) *
                              std::max(std::abs(omega_factor), std::abs(epsilon_factor));
    // The drive direction turns at d(alpha t)/dt = alpha0 + 2 gamma t.
    const double turn_rate = std::max(std::abs(params.alpha0 + 2.0 * params.gamma * ta),
                                      std::abs(params.alpha0 + 2.0 * params.gamma * tb));
    const std::size_t n = substeps(std::max(field_rate, turn_rate), tb - ta, cfg.phase_step);
    const double h = (tb - ta) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t0 = ta + h * static_cast<double>(k);
      if (cfg.spinor_scheme == SpinorScheme::midpoint) {
        const DriveFields f = fields_at(params, t0 + 0.5 * h, cfg.mu_floor);
        psi = rotate_spinor(psi, f.omega * omega_factor, f.epsilon * epsilon_factor, h);
        continue;
      }
      const DriveFields f1 = fields_at(params, t0 + kGaussNode1 * h, cfg.mu_floor);
      const DriveFields f2 = fields_at(params, t0 + kGaussNode2 * h, cfg.mu_floor);
      const double om1 = f1.omega * omega_factor;
      const double ep1 = f1.epsilon * epsilon_factor;
      const double om2 = f2.omega * omega_factor;
      const double ep2 = f2.epsilon * epsilon_factor;
      // Commutator-free fourth-order Magnus: the first factor acts first.
      psi = rotate_spinor(psi, kMagnusWeightA * om1 + kMagnusWeightB * om2,
                          kMagnusWeightA * ep1 + kMagnusWeightB * ep2, h);
      psi = rotate_spinor(psi, kMagnusWeightB * om1 + kMagnusWeightA * om2,
                          kMagnusWeightB * ep1 + kMagnusWeightA * ep2, h);
    }
    states.push_back(expectations_from_spinor(psi, grid[i]));
  }
  Trajectory traj = make_trajectory(TrajectoryLabel::exact_spinor, std::move(grid), states);
  return traj;
}

}  // namespace inertia

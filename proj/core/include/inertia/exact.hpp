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

#pragma once

// Exact propagation of the driven two-level system by two independent routes:
// the Liouville expectation-value ODE (adaptive Runge-Kutta) and direct
// Schrodinger evolution of the spinor (exponential midpoint rule).

#include <cstdint>
#include <string_view>
#include <vector>

#include "inertia/algebra.hpp"
#include "inertia/protocol.hpp"

namespace inertia {

enum class IntegrationMethod {
  adaptive_embedded_rk,             ///< Dormand-Prince 5(4) with dense output
  fixed_step_midpoint_exponential,  ///< exact rotations of the midpoint generator
};

enum class SpinorScheme {
  magnus4,   ///< commutator-free fourth-order Magnus, two exact 2x2 exponentials
  midpoint,  ///< one exact 2x2 exponential of the midpoint Hamiltonian
};

struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  /// Upper bound on the adaptive step; 0 leaves it unbounded.
  double max_step = 0.0;
  IntegrationMethod method = IntegrationMethod::adaptive_embedded_rk;
  /// Largest rotation angle per fixed step, both for the spinor route
  /// (||H|| dt and the drive-phase advance) and for the fixed-step Liouville
  /// route. Must lie in (0, 0.05].
  double phase_step = 2e-4;
  SpinorScheme spinor_scheme = SpinorScheme::magnus4;
  double mu_floor = kDefaultMuFloor;
};

/// Throws std::invalid_argument on non-positive tolerances or steps.
void require_valid(const IntegratorConfig& cfg);

enum class TrajectoryLabel { exact_liouville, exact_spinor, inertial, corrected, adiabatic };

[[nodiscard]] std::string_view to_string(TrajectoryLabel label);

struct TrajectorySample {
  ProtocolSample protocol;
  LiouvilleVec state;
};

struct Trajectory {
  TrajectoryLabel label = TrajectoryLabel::exact_liouville;
  std::vector<TrajectorySample> samples;
  double initial_energy = 0.0;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
  [[nodiscard]] std::vector<double> times() const;
};

/// Protocol samples on the params time grid.
[[nodiscard]] std::vector<ProtocolSample> sample_grid(const ProtocolParams& params,
                                                      double mu_floor = kDefaultMuFloor);

/// dv/dt = Omega M(mu) v + (dOmega/dt / Omega) v. The identity rate is zero.
[[nodiscard]] LiouvilleVec liouville_rhs(double t, const LiouvilleVec& v,
                                         const ProtocolParams& params,
                                         double mu_floor = kDefaultMuFloor);

/// Integrates the Liouville equation over the params grid. Throws SingularMu
/// for protocols whose mu reaches zero, StepSizeUnderflow if the adaptive
/// stepper stalls.
[[nodiscard]] Trajectory integrate_liouville(const ProtocolParams& params, const LiouvilleVec& v0,
                                             const IntegratorConfig& cfg = {});

/// Single propagation from t_start to t_end (either direction).
[[nodiscard]] LiouvilleVec propagate_liouville(const ProtocolParams& params,
                                               const LiouvilleVec& v0, double t_start,
                                               double t_end, const IntegratorConfig& cfg = {});

/// Multiplicative Gaussian noise on the (omega, epsilon) drive samples, held
/// constant on each sample interval. relative_sigma = 0 disables it.
struct FieldNoise {
  double relative_sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Propagates i dpsi/dt = H(t) psi with exact 2x2 exponentials (cfg.spinor_scheme)
/// and maps each sample to (<H>, <L>, <C>) of the nominal drive. Noise scales
/// omega and epsilon by independent 1 + sigma N(0,1) factors per sample interval.
[[nodiscard]] Trajectory integrate_spinor(const ProtocolParams& params, const SpinorState& psi0,
                                          const IntegratorConfig& cfg = {},
                                          const FieldNoise& noise = {});

/// Lower eigenvector of (omega sz + eps sx) / 2 with amp1 real and >= 0.
/// Throws DegenerateHamiltonian if sqrt(omega^2 + eps^2) < 1e-14.
[[nodiscard]] SpinorState ground_state(double omega, double epsilon);

/// Ground state of H(0) and the matching Liouville vector (-Omega(0)/2, 0, 0, 1).
[[nodiscard]] SpinorState initial_ground_state(const ProtocolParams& params);
[[nodiscard]] LiouvilleVec initial_ground_vector(const ProtocolParams& params);

}  // namespace inertia

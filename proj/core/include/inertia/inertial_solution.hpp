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

// Inertial solution of the chirped two-level drive and its first-order
// correction.
//
// With v = (Omega(t) / Omega(0)) u and theta = integral of Omega, the exact
// motion is du/dtheta = M(mu(theta)) u. The inertial solution keeps each
// eigenvector of B'(mu) attached to its branch while it accumulates the
// dynamical phase -integral lambda_k dtheta:
//
//   v(t) = (Omega(t)/Omega(0)) P(mu(t)) exp(-i diag(0, Phi, -Phi)) P^-1(mu(0)) v(0),
//   Phi(t) = integral_0^t kappa(mu(s)) Omega(s) ds.
//
// P(mu(t)) sits on the left: the solution tracks the instantaneous eigenbasis.

#include <array>
#include <span>

#include "inertia/algebra.hpp"
#include "inertia/exact.hpp"
#include "inertia/protocol.hpp"

namespace inertia {

/// Phi(t) = integral_0^t kappa Omega dt'. Branch 2 accumulates -Phi, branch 3 +Phi.
[[nodiscard]] double dynamical_phase(const ProtocolParams& params, double t,
                                     double mu_floor = kDefaultMuFloor);

/// Phi on every time in `times` (ascending, starting at 0), accumulated
/// interval by interval.
[[nodiscard]] std::vector<double> dynamical_phase_series(const ProtocolParams& params,
                                                         std::span<const double> times,
                                                         double mu_floor = kDefaultMuFloor);

/// phi_k = i integral dmu (G_k . dF_k/dmu), split into its real part (the
/// phase proper) and imaginary part (an amplitude factor exp(-residue)
/// produced by the basis normalization). Both vanish in the unit basis.
struct GeometricPhase {
  double phase = 0.0;
  double residue = 0.0;
};

/// Branch k in {1, 2, 3}.
[[nodiscard]] GeometricPhase geometric_phase_between(double mu_from, double mu_to, int branch,
                                                     Normalization basis = Normalization::unit);

[[nodiscard]] GeometricPhase geometric_phase(const ProtocolParams& params, int branch, double t,
                                             Normalization basis = Normalization::unit);

struct BranchPhases {
  double dynamical = 0.0;  ///< -integral lambda_k dtheta
  GeometricPhase geometric;
};

struct PhaseLedger {
  std::array<BranchPhases, 3> branches{};
  bool include_geometric = false;
};

[[nodiscard]] PhaseLedger phase_ledger(const ProtocolParams& params, double t,
                                       bool include_geometric,
                                       Normalization basis = Normalization::unit);

struct InertialOptions {
  bool include_geometric = false;
  Normalization basis = Normalization::unit;
};

/// Inertial trajectory on the params grid. Throws SingularMu for singular
/// protocols and ComplexResidue when the reconstruction is not real to
/// 1e-8 Omega(0).
[[nodiscard]] Trajectory inertial_propagate(const ProtocolParams& params, const LiouvilleVec& v0,
                                            const IntegratorConfig& cfg = {},
                                            InertialOptions options = {});

enum class InertialVerdict { valid, marginal, violated };

[[nodiscard]] std::string_view to_string(InertialVerdict verdict);

struct InertialThresholds {
  double valid_below = 1e-2;
  double violated_above = 1e-1;
};

struct InertialReport {
  double upsilon = 0.0;
  double mu_rate = 0.0;
  double mu_at_max = 0.0;
  InertialVerdict verdict = InertialVerdict::valid;
};

/// Upsilon = max over mu and n != k of |G_k . dB'/dmu . F_n| / (lambda_n - lambda_k)^2
/// * (dmu/dtheta)^2, with dmu/dtheta = delta / Omega, on a grid over [0, t_final].
[[nodiscard]] InertialReport inertial_parameter(const ProtocolParams& params,
                                                const InertialThresholds& thresholds = {},
                                                std::size_t grid_points = 401);

/// O = -P^-1 dP/dtheta for the gap-scaled basis: (2 delta mu / (Omega kappa^2)) I + S.
struct CorrectionOperator {
  CMat3 entries;
  double scalar_part = 0.0;
  CMat3 s_part;
  std::array<cplx, 3> eigenvalues{};
  double max_eigen_imag = 0.0;
};

/// Throws SingularMu for |mu| below the floor and std::invalid_argument for Omega = 0.
[[nodiscard]] CorrectionOperator correction_operator(double mu, double omega_rabi, double delta,
                                                     double mu_floor = kDefaultMuFloor);

/// First-order Zassenhaus propagation in the gap-scaled eigenbasis:
/// w <- exp(-i D dtheta) exp(O dtheta) w per grid interval, O and D at the
/// interval midpoint; v = (Omega/Omega(0)) P(mu) w.
[[nodiscard]] Trajectory corrected_propagate(const ProtocolParams& params, const LiouvilleVec& v0,
                                             const IntegratorConfig& cfg = {});

/// v(t) = (Omega(t)/Omega(0)) v0 for an H(0) eigenstate (l = c = 0).
/// Throws NotEigenstate otherwise.
[[nodiscard]] Trajectory adiabatic_reference(const ProtocolParams& params, const LiouvilleVec& v0,
                                             const IntegratorConfig& cfg = {});

/// Smallest t with integral_0^t kappa |Omega| dt' = 2 pi periods, i.e. the
/// horizon on which the branch oscillation completes `periods` cycles.
/// params.t_final is ignored.
[[nodiscard]] double auto_horizon(const ProtocolParams& params, double periods = 10.0,
                                  double mu_floor = kDefaultMuFloor);

/// Minimum of auto_horizon over base.with_delta(d) for d in deltas.
[[nodiscard]] double common_horizon(const ProtocolParams& base, std::span<const double> deltas,
                                    double periods = 10.0, double mu_floor = kDefaultMuFloor);

}  // namespace inertia

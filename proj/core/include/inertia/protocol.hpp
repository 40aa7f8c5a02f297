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

// Chirped two-level drive with a linearly varying adiabatic parameter:
//
//   mu(t)    = mu0 + delta t
//   alpha(t) = alpha0 + gamma t
//   Omega(t) = -(alpha0 + 2 gamma t) / mu(t)
//   omega(t) = Omega cos(alpha(t) t),  epsilon(t) = Omega sin(alpha(t) t)
//
// Omega is signed; omega^2 + epsilon^2 = Omega^2. The library is unit agnostic:
// any consistent (angle / time, time) pair works.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace inertia {

inline constexpr double kDefaultMuFloor = 1e-9;

struct ProtocolParams {
  double alpha0 = 0.0;  ///< initial chirp frequency, rad / time
  double gamma = 0.0;   ///< chirp rate, rad / time^2
  double mu0 = -1.0;    ///< adiabatic parameter at t = 0
  double delta = 0.0;   ///< d mu / dt, 1 / time
  double t_final = 1.0;
  std::size_t n_samples = 2000;

  /// Copy with a different delta.
  [[nodiscard]] ProtocolParams with_delta(double d) const {
    ProtocolParams p = *this;
    p.delta = d;
    return p;
  }
};

struct DriveFields {
  double omega = 0.0;       ///< detuning (sigma_z coefficient)
  double epsilon = 0.0;     ///< Rabi frequency (sigma_x coefficient)
  double omega_rabi = 0.0;  ///< signed generalized Rabi frequency Omega
  double alpha = 0.0;
};

struct ProtocolSample {
  double t = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double omega_rabi = 0.0;
  double omega = 0.0;
  double epsilon = 0.0;
  double theta = 0.0;  ///< scaled time, integral of Omega from 0 to t
};

/// Throws std::invalid_argument unless n_samples >= 2 and t_final > 0.
void require_well_formed(const ProtocolParams& params);

[[nodiscard]] double mu_at(const ProtocolParams& params, double t);

/// Throws SingularMu when |mu(t)| < mu_floor.
[[nodiscard]] DriveFields fields_at(const ProtocolParams& params, double t,
                                    double mu_floor = kDefaultMuFloor);

/// Closed-form integral of Omega over [0, t]. Throws SingularMu when mu vanishes
/// on [0, t].
[[nodiscard]] double theta_at(const ProtocolParams& params, double t,
                              double mu_floor = kDefaultMuFloor);

/// dOmega/dt = -(2 gamma mu(t) - delta (alpha0 + 2 gamma t)) / mu(t)^2.
[[nodiscard]] double rabi_rate_at(const ProtocolParams& params, double t,
                                  double mu_floor = kDefaultMuFloor);

[[nodiscard]] ProtocolSample sample_at(const ProtocolParams& params, double t,
                                       double mu_floor = kDefaultMuFloor);

/// n_samples uniformly spaced times on [0, t_final], both ends included.
[[nodiscard]] std::vector<double> time_grid(const ProtocolParams& params);

/// Time at which mu(t) = 0 on [0, t_final], if any.
[[nodiscard]] std::optional<double> mu_zero_crossing(const ProtocolParams& params);

/// Singularity and magnitude summary of a protocol over [0, t_final].
struct ProtocolCheck {
  bool ok = true;
  std::optional<double> zero_crossing;
  double min_abs_mu = 0.0;
  double max_abs_omega_rabi = 0.0;
  std::vector<std::string> problems;
};

[[nodiscard]] ProtocolCheck check_protocol(const ProtocolParams& params,
                                           double mu_floor = kDefaultMuFloor);

/// Throws SingularMu (or std::invalid_argument) if check_protocol fails.
void require_nonsingular(const ProtocolParams& params, double mu_floor = kDefaultMuFloor);

}  // namespace inertia

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

#include "inertia/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "inertia/errors.hpp"

namespace inertia {
namespace {

void require_mu(double mu, double t, double mu_floor) {
  if (!(std::abs(mu) >= mu_floor)) {
    std::ostringstream msg;
    msg << "adiabatic parameter mu(" << t << ") = " << mu << " is below the singularity floor "
        << mu_floor;
    throw SingularMu(msg.str());
  }
}

// log(1 + x) / x and (log(1 + x) - x) / x^2, both regular at x = 0.
double log1p_ratio(double x) {
  if (std::abs(x) < 0.1) {
    double sum = 0.0;
    double power = 1.0;
    for (int k = 1; k <= 24; ++k) {
      sum += ((k % 2 == 1) ? power : -power) / k;
      power *= x;
    }
    return sum;
  }
  return std::log1p(x) / x;
}

double log1p_remainder(double x) {
  if (std::abs(x) < 0.1) {
    double sum = 0.0;
    double power = 1.0;
    for (int k = 2; k <= 26; ++k) {
      sum += ((k % 2 == 1) ? power : -power) / k;
      power *= x;
    }
    return sum;
  }
  return (std::log1p(x) - x) / (x * x);
}

}  // namespace

void require_well_formed(const ProtocolParams& params) {
  if (params.n_samples < 2) {
    throw std::invalid_argument("n_samples must be at least 2");
  }
  if (!(params.t_final > 0.0) || !std::isfinite(params.t_final)) {
    throw std::invalid_argument("t_final must be positive and finite");
  }
}

double mu_at(const ProtocolParams& params, double t) { return params.mu0 + params.delta * t; }

DriveFields fields_at(const ProtocolParams& params, double t, double mu_floor) {
  const double mu = mu_at(params, t);
  require_mu(mu, t, mu_floor);
  DriveFields f;
  f.alpha = params.alpha0 + params.gamma * t;
  f.omega_rabi = -(params.alpha0 + 2.0 * params.gamma * t) / mu;
  const double phase = f.alpha * t;
  f.omega = f.omega_rabi * std::cos(phase);
  f.epsilon = f.omega_rabi * std::sin(phase);
  return f;
}

double theta_at(const ProtocolParams& params, double t, double mu_floor) {
  const double mu_end = mu_at(params, t);
  require_mu(params.mu0, 0.0, mu_floor);
  require_mu(mu_end, t, mu_floor);
  if ((params.mu0 > 0.0) != (mu_end > 0.0)) {
    throw SingularMu("mu crosses zero on [0, t]");
  }
  // -(alpha0 + 2 gamma s) / (mu0 + delta s) integrated with x = delta t / mu0:
  //   theta = -(alpha0 t / mu0) log(1+x)/x + (2 gamma t^2 / mu0) (log(1+x) - x)/x^2
  const double x = params.delta * t / params.mu0;
  return -(params.alpha0 * t / params.mu0) * log1p_ratio(x) +
         (2.0 * params.gamma * t * t / params.mu0) * log1p_remainder(x);
}

double rabi_rate_at(const ProtocolParams& params, double t, double mu_floor) {
  const double mu = mu_at(params, t);
  require_mu(mu, t, mu_floor);
  const double drive = params.alpha0 + 2.0 * params.gamma * t;
  return -(2.0 * params.gamma * mu - params.delta * drive) / (mu * mu);
}

ProtocolSample sample_at(const ProtocolParams& params, double t, double mu_floor) {
  const DriveFields f = fields_at(params, t, mu_floor);
  ProtocolSample s;
  s.t = t;
  s.mu = mu_at(params, t);
  s.alpha = f.alpha;
  s.omega_rabi = f.omega_rabi;
  s.omega = f.omega;
  s.epsilon = f.epsilon;
  s.theta = theta_at(params, t, mu_floor);
  return s;
}

std::vector<double> time_grid(const ProtocolParams& params) {
  require_well_formed(params);
  std::vector<double> grid(params.n_samples);
  const double n = static_cast<double>(params.n_samples - 1);
  for (std::size_t i = 0; i < params.n_samples; ++i) {
    grid[i] = params.t_final * (static_cast<double>(i) / n);
  }
  grid.back() = params.t_final;
  return grid;
}

std::optional<double> mu_zero_crossing(const ProtocolParams& params) {
  if (params.mu0 == 0.0) {
    return 0.0;
  }
  if (params.delta == 0.0) {
    return std::nullopt;
  }
  const double root = -params.mu0 / params.delta;
  if (root >= 0.0 && root <= params.t_final) {
    return root;
  }
  return std::nullopt;
}

ProtocolCheck check_protocol(const ProtocolParams& params, double mu_floor) {
  ProtocolCheck report;
  if (params.n_samples < 2) {
    report.problems.emplace_back("n_samples must be at least 2");
  }
  if (!(params.t_final > 0.0) || !std::isfinite(params.t_final)) {
    report.problems.emplace_back("t_final must be positive and finite");
    report.ok = false;
    return report;
  }

  const double mu_start = params.mu0;
  const double mu_end = mu_at(params, params.t_final);
  report.zero_crossing = mu_zero_crossing(params);
  report.min_abs_mu =
      report.zero_crossing ? 0.0 : std::min(std::abs(mu_start), std::abs(mu_end));

  if (report.zero_crossing) {
    std::ostringstream msg;
    msg << "mu(t) crosses zero at t = " << *report.zero_crossing;
    report.problems.push_back(msg.str());
    report.max_abs_omega_rabi = std::numeric_limits<double>::infinity();
  } else if (report.min_abs_mu < mu_floor) {
    std::ostringstream msg;
    msg << "min |mu| = " << report.min_abs_mu << " is below the floor " << mu_floor;
    report.problems.push_back(msg.str());
    report.max_abs_omega_rabi = std::numeric_limits<double>::infinity();
  } else {
    // dOmega/dt has the sign of -(2 gamma mu0 - delta alpha0) everywhere, so the
    // extremes of Omega sit at the interval ends.
    report.max_abs_omega_rabi =
        std::max(std::abs(fields_at(params, 0.0, mu_floor).omega_rabi),
                 std::abs(fields_at(params, params.t_final, mu_floor).omega_rabi));
  }
  report.ok = report.problems.empty();
  return report;
}

void require_nonsingular(const ProtocolParams& params, double mu_floor) {
  require_well_formed(params);
  const ProtocolCheck check = check_protocol(params, mu_floor);
  if (!check.ok) {
    throw SingularMu(check.problems.front());
  }
}

}  // namespace inertia

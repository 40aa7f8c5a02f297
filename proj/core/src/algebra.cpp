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

#include "inertia/algebra.hpp"

#include <cmath>
#include <sstream>

#include "inertia/errors.hpp"

namespace inertia {
namespace {

constexpr cplx kI{0.0, 1.0};

// Columns in the order (lambda = 0, (-mu, +i kappa, 1) branch, (-mu, -i kappa, 1) branch).
CMat3 raw_columns(double mu, Normalization normalization) {
  const double kappa = std::sqrt(1.0 + mu * mu);
  CMat3 p;
  if (normalization == Normalization::unit) {
    const double r = 1.0 / (std::sqrt(2.0) * kappa);
    p << 1.0 / kappa, -mu * r, -mu * r,
         0.0, kI / std::sqrt(2.0), -kI / std::sqrt(2.0),
         mu / kappa, r, r;
  } else {
    if (mu == 0.0) {
      throw SingularMu("gap-scaled eigenbasis is singular at mu = 0");
    }
    p << 1.0 / mu, -mu, -mu,
         0.0, kI * kappa, -kI * kappa,
         1.0, 1.0, 1.0;
    p /= 2.0 * kappa * kappa;
  }
  return p;
}

CMat3 raw_inverse(double mu, Normalization normalization) {
  if (normalization == Normalization::unit) {
    return raw_columns(mu, normalization).adjoint();
  }
  const double kappa = std::sqrt(1.0 + mu * mu);
  CMat3 q;
  q << 2.0 * mu, 0.0, 2.0 * mu * mu,
       -mu, -kI * kappa, 1.0,
       -mu, kI * kappa, 1.0;
  return q;
}

// True when the (-mu, +i kappa, 1) column is the +kappa eigenvector of B'.
bool plus_branch_is_positive(double mu) {
  const double kappa = std::sqrt(1.0 + mu * mu);
  const CMat3 b = bprime(mu).entries;
  const CVec3 f{-mu, kI * kappa, 1.0};
  const double as_plus = (b * f - kappa * f).norm();
  const double as_minus = (b * f + kappa * f).norm();
  return as_plus <= as_minus;
}

}  // namespace

GeneratorMatrix bprime(double mu) {
  GeneratorMatrix g;
  g.mu = mu;
  g.entries = kI * rotation_generator(mu).cast<cplx>();
  return g;
}

Mat3 rotation_generator(double mu) {
  Mat3 m;
  m << 0.0, mu, 0.0,
       -mu, 0.0, 1.0,
       0.0, -1.0, 0.0;
  return m;
}

CMat3 bprime_gradient() {
  Mat3 m;
  m << 0.0, 1.0, 0.0,
       -1.0, 0.0, 0.0,
       0.0, 0.0, 0.0;
  return kI * m.cast<cplx>();
}

EigenSystem eigensystem(double mu, Normalization normalization) {
  EigenSystem es;
  es.mu = mu;
  es.kappa = std::sqrt(1.0 + mu * mu);
  es.eigenvalues = {0.0, es.kappa, -es.kappa};
  es.normalization = normalization;
  es.p = raw_columns(mu, normalization);
  es.p_inv = raw_inverse(mu, normalization);
  if (!plus_branch_is_positive(mu)) {
    es.p.col(1).swap(es.p.col(2));
    es.p_inv.row(1).swap(es.p_inv.row(2));
  }
  return es;
}

CMat3 eigenvector_derivative(double mu, Normalization normalization) {
  const double k2 = 1.0 + mu * mu;
  const double kappa = std::sqrt(k2);
  const double k3 = k2 * kappa;
  const double k4 = k2 * k2;
  CMat3 d;
  if (normalization == Normalization::unit) {
    const double s = std::sqrt(2.0);
    d << -mu / k3, -1.0 / (s * k3), -1.0 / (s * k3),
         0.0, 0.0, 0.0,
         1.0 / k3, -mu / (s * k3), -mu / (s * k3);
  } else {
    if (mu == 0.0) {
      throw SingularMu("gap-scaled eigenbasis is singular at mu = 0");
    }
    const double a = -(1.0 - mu * mu) / (2.0 * k4);
    const cplx b = kI * (mu / (2.0 * k3));
    d << -(1.0 + 3.0 * mu * mu) / (2.0 * mu * mu * k4), a, a,
         0.0, -b, b,
         -mu / k4, -mu / k4, -mu / k4;
  }
  if (!plus_branch_is_positive(mu)) {
    d.col(1).swap(d.col(2));
  }
  return d;
}

Vec3 bloch_vector(const SpinorState& psi) {
  const cplx coherence = std::conj(psi.amp0) * psi.amp1;
  return {2.0 * coherence.real(), 2.0 * coherence.imag(),
          std::norm(psi.amp0) - std::norm(psi.amp1)};
}

namespace {

LiouvilleVec expectations(const SpinorState& psi, double omega, double epsilon, double rabi) {
  const double n = psi.norm_squared();
  if (std::abs(n - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "spinor norm^2 = " << n << " deviates from 1";
    throw NotNormalized(msg.str());
  }
  const Vec3 s = bloch_vector(psi);
  LiouvilleVec v;
  v.h = 0.5 * (omega * s(2) + epsilon * s(0));
  v.l = 0.5 * (epsilon * s(2) - omega * s(0));
  v.c = 0.5 * rabi * s(1);
  v.id_coeff = 1.0;
  return v;
}

}  // namespace

LiouvilleVec expectations_from_spinor(const SpinorState& psi, double omega, double epsilon) {
  return expectations(psi, omega, epsilon, std::hypot(omega, epsilon));
}

LiouvilleVec expectations_from_spinor(const SpinorState& psi, const ProtocolSample& sample) {
  return expectations(psi, sample.omega, sample.epsilon, sample.omega_rabi);
}

}  // namespace inertia

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

// SU(2) Liouville-space algebra for the basis {H, L, C, I}:
//
//   H = (omega sz + eps sx) / 2,  L = (eps sz - omega sx) / 2,  C = (Omega / 2) sy.
//
// The identity coefficient is a constant of motion and is carried as a scalar
// next to the (h, l, c) triple. The generator B'(mu) = i M(mu) with
//
//        [  0   mu   0 ]
//   M =  [ -mu   0   1 ]
//        [  0   -1   0 ]
//
// real antisymmetric, so B' is Hermitian with spectrum {0, +kappa, -kappa},
// kappa = sqrt(1 + mu^2).

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "inertia/protocol.hpp"

namespace inertia {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using cplx = std::complex<double>;

struct LiouvilleVec {
  double h = 0.0;
  double l = 0.0;
  double c = 0.0;
  double id_coeff = 1.0;

  [[nodiscard]] Vec3 xyz() const { return {h, l, c}; }
  [[nodiscard]] static LiouvilleVec from_xyz(const Vec3& v, double id_coeff = 1.0) {
    return {v(0), v(1), v(2), id_coeff};
  }
  [[nodiscard]] double norm_squared() const { return h * h + l * l + c * c; }
};

struct GeneratorMatrix {
  CMat3 entries;
  double mu = 0.0;
};

/// B'(mu) = i [[0, mu, 0], [-mu, 0, 1], [0, -1, 0]].
[[nodiscard]] GeneratorMatrix bprime(double mu);

/// The real antisymmetric M(mu) = -i B'(mu) that drives d u / d theta = M u.
[[nodiscard]] Mat3 rotation_generator(double mu);

/// dB'/dmu = i [[0, 1, 0], [-1, 0, 0], [0, 0, 0]].
[[nodiscard]] CMat3 bprime_gradient();

/// Column scaling of the eigenvector matrix P.
enum class Normalization {
  /// Unit-norm columns, P unitary. Parallel-transport gauge: G_k . dF_k/dmu = 0.
  unit,
  /// Columns (1/mu, 0, 1), (-mu, i kappa, 1), (-mu, -i kappa, 1), all over 2 kappa^2.
  /// Singular at mu = 0.
  gap_scaled,
};

struct EigenSystem {
  double mu = 0.0;
  double kappa = 1.0;
  std::array<double, 3> eigenvalues{};  ///< (0, kappa, -kappa)
  CMat3 p;      ///< columns F_k: right eigenvectors of B'
  CMat3 p_inv;  ///< rows G_k: bi-orthogonal partners, G_j . F_k = delta_jk
  Normalization normalization = Normalization::unit;
};

/// Closed-form diagonalization of B'(mu). Column order matches `eigenvalues`;
/// the +kappa / -kappa assignment is checked against B' F = lambda F on
/// construction. gap_scaled throws SingularMu for mu = 0.
[[nodiscard]] EigenSystem eigensystem(double mu, Normalization normalization = Normalization::unit);

/// Analytic dP/dmu for the given normalization.
[[nodiscard]] CMat3 eigenvector_derivative(double mu, Normalization normalization);

/// Two-level amplitudes in the sigma_z eigenbasis (|0> has sz = +1).
struct SpinorState {
  cplx amp0{1.0, 0.0};
  cplx amp1{0.0, 0.0};

  [[nodiscard]] double norm_squared() const { return std::norm(amp0) + std::norm(amp1); }
};

/// Pauli expectation values (<sx>, <sy>, <sz>).
[[nodiscard]] Vec3 bloch_vector(const SpinorState& psi);

/// (<H>, <L>, <C>) with Omega = sqrt(omega^2 + eps^2). Throws NotNormalized when
/// | |psi|^2 - 1 | > 1e-6.
[[nodiscard]] LiouvilleVec expectations_from_spinor(const SpinorState& psi, double omega,
                                                    double epsilon);

/// Same, but with the protocol's signed Omega in the C coordinate.
[[nodiscard]] LiouvilleVec expectations_from_spinor(const SpinorState& psi,
                                                    const ProtocolSample& sample);

}  // namespace inertia

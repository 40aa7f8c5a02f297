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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails. Every tolerance lives in kTol below.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "inertia/algebra.hpp"
#include "inertia/analysis.hpp"
#include "inertia/exact.hpp"
#include "inertia/inertial_solution.hpp"
#include "inertia_app/config.hpp"
#include "inertia_app/runner.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

using inertia::LiouvilleVec;
using inertia::ProtocolParams;
using inertia::Trajectory;

struct Tolerances {
  double eigensystem = 1e-12;
  double eigensystem_seconds = 1.0;
  double dual_oracle = 1e-8;  // times Omega(0)
  double dual_oracle_seconds = 30.0;
  double norm = 1e-8;             // times Omega(0)^2
  double constant_mu = 1e-6;      // times Omega(0)/2
  double small_delta = 1e-2;      // frozen from the exact oracle, see README
  double breakdown_r2 = 0.9;
  std::size_t extremum_samples = 2;
  double eigen_imag = 1e-12;      // relative to the largest |eigenvalue|
  double fd_ratio_low = 3.5;
  double fd_ratio_high = 4.5;
  double noise_relative = 0.01;
  std::uint64_t noise_seed = 42;
  double noise_effect = 0.05;
};
constexpr Tolerances kTol{};

constexpr std::size_t kSamples = 2000;

ProtocolParams reference(double factor) {
  return oracle::reference_params(factor, oracle::kReferenceHorizon, kSamples);
}

struct Result {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_component_diff(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, (a.samples[i].state.xyz() - b.samples[i].state.xyz()).cwiseAbs().maxCoeff());
  }
  return m;
}

double max_norm_residual(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& s : traj.samples) {
    const double w = s.protocol.omega_rabi;
    m = std::max(m, std::abs(s.state.norm_squared() - 0.25 * w * w));
  }
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

Result eigensystem_check() {
  const auto start = std::chrono::steady_clock::now();
  oracle::Gen gen(2026);
  double worst_diag = 0.0;
  double worst_kappa = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mu = gen.uniform(-5.0, 5.0);
    const auto b = inertia::bprime(mu).entries;
    for (auto basis : {inertia::Normalization::unit, inertia::Normalization::gap_scaled}) {
      const auto es = inertia::eigensystem(mu, basis);
      inertia::CMat3 diag = inertia::CMat3::Zero();
      for (int k = 0; k < 3; ++k) {
        diag(k, k) = es.eigenvalues[static_cast<std::size_t>(k)];
      }
      worst_diag = std::max(worst_diag, (es.p_inv * b * es.p - diag).cwiseAbs().maxCoeff());
      Eigen::ComplexEigenSolver<inertia::CMat3> general(b, false);
      double top = -INFINITY;
      for (int k = 0; k < 3; ++k) {
        top = std::max(top, general.eigenvalues()(k).real());
      }
      worst_kappa = std::max(worst_kappa, std::abs(es.kappa - top));
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst_diag < kTol.eigensystem && worst_kappa < kTol.eigensystem &&
                  elapsed < kTol.eigensystem_seconds;
  return {ok, fmt("diag residual %.2e, kappa error %.2e", worst_diag, worst_kappa) +
                  fmt(", %.3f s", elapsed)};
}

Result dual_oracle_check() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double f : oracle::reference_factors()) {
    const ProtocolParams p = reference(f);
    const Trajectory a = inertia::integrate_liouville(p, inertia::initial_ground_vector(p));
    const Trajectory b = inertia::integrate_spinor(p, inertia::initial_ground_state(p));
    worst = std::max(worst, max_component_diff(a, b) / std::abs(a.samples.front().protocol.omega_rabi));
  }
  const double elapsed = seconds_since(start);
  return {worst < kTol.dual_oracle && elapsed < kTol.dual_oracle_seconds,
          fmt("max disagreement %.2e Omega(0), %.2f s", worst, elapsed)};
}

Result norm_check() {
  double worst = 0.0;
  for (double f : oracle::reference_factors()) {
    const ProtocolParams p = reference(f);
    const double om0 = std::abs(oracle::rabi(p, 0.0));
    const Trajectory a = inertia::integrate_liouville(p, inertia::initial_ground_vector(p));
    const Trajectory b = inertia::integrate_spinor(p, inertia::initial_ground_state(p));
    worst = std::max({worst, max_norm_residual(a) / (om0 * om0), max_norm_residual(b) / (om0 * om0)});
  }
  return {worst < kTol.norm, fmt("max |h^2+l^2+c^2 - Omega^2/4| = %.2e Omega(0)^2", worst)};
}

Result constant_mu_check() {
  const ProtocolParams p = reference(0.0);
  const LiouvilleVec v0 = inertia::initial_ground_vector(p);
  const auto d = inertia::distance_series(inertia::inertial_propagate(p, v0),
                                          inertia::integrate_liouville(p, v0),
                                          inertia::DistanceScale::normalized);
  const double worst = d.max_value();
  return {worst <= kTol.constant_mu, fmt("max D = %.2e Omega(0)/2", worst)};
}

Result small_delta_check() {
  double worst = 0.0;
  std::string detail;
  for (double f : {-0.01, 0.01}) {
    const ProtocolParams p = reference(f);
    const LiouvilleVec v0 = inertia::initial_ground_vector(p);
    const auto exact = inertia::normalized_energy(inertia::integrate_liouville(p, v0));
    const auto inert = inertia::normalized_energy(inertia::inertial_propagate(p, v0));
    const double gap = max_abs_diff(exact.value, inert.value);
    worst = std::max(worst, gap);
    detail += fmt("delta %+.2f: %.5f; ", f, gap);
  }
  return {worst < kTol.small_delta, detail + fmt("bound %.3g", kTol.small_delta)};
}

Result breakdown_check() {
  const std::vector<double> mags{0.01, 0.05, 0.1};
  std::vector<double> ends;
  for (double f : mags) {
    const ProtocolParams p = reference(f);
    const LiouvilleVec v0 = inertia::initial_ground_vector(p);
    const auto d = inertia::distance_series(inertia::inertial_propagate(p, v0),
                                            inertia::integrate_liouville(p, v0),
                                            inertia::DistanceScale::normalized);
    ends.push_back(d.value.back());
  }
  const bool increasing = ends[0] < ends[1] && ends[1] < ends[2];
  const auto fit = inertia::linear_fit(mags, ends);
  std::string detail = "D(t_final) =";
  for (double e : ends) {
    detail += fmt(" %.4f", e);
  }
  detail += fmt(" Omega(0)/2, r^2 = %.4f", fit.r_squared);
  return {increasing && fit.r_squared > kTol.breakdown_r2, detail};
}

Result phase_robustness_check() {
  const ProtocolParams p = reference(-1.0);
  const LiouvilleVec v0 = inertia::initial_ground_vector(p);
  const auto exact = inertia::normalized_energy(inertia::integrate_liouville(p, v0));
  const auto inert = inertia::normalized_energy(inertia::inertial_propagate(p, v0));
  const auto ex = inertia::local_extrema(exact);
  const auto in = inertia::local_extrema(inert);
  std::size_t worst = 0;
  for (std::size_t i : ex) {
    std::size_t best = SIZE_MAX;
    for (std::size_t j : in) {
      best = std::min(best, i > j ? i - j : j - i);
    }
    worst = std::max(worst, best);
  }
  const bool counts = !ex.empty() && ex.size() == in.size();
  const double amp = max_abs_diff(exact.value, inert.value);
  const bool ok = counts && worst <= kTol.extremum_samples && amp > kTol.small_delta;
  return {ok, fmt("%.0f exact extrema, worst offset %.0f samples", static_cast<double>(ex.size()),
                  static_cast<double>(worst)) +
                  fmt(" (limit %.0f), amplitude gap %.3f", static_cast<double>(kTol.extremum_samples), amp)};
}

Result correction_check() {
  oracle::Gen gen(7);
  double worst_imag = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double mu = gen.sign() * gen.uniform(0.05, 5.0);
    const double omega = gen.sign() * gen.uniform(1.0, 200.0);
    const double delta = gen.uniform(-100.0, 100.0);
    const auto op = inertia::correction_operator(mu, omega, delta);
    double scale = 1.0;
    for (const auto& ev : op.eigenvalues) {
      scale = std::max(scale, std::abs(ev));
    }
    worst_imag = std::max(worst_imag, op.max_eigen_imag / scale);
  }

  // Finite-difference convergence of -P^-1 dP/dtheta at a few points.
  double worst_ratio_dev = 0.0;
  double lo = INFINITY;
  double hi = 0.0;
  for (double mu : {-2.0, -1.0, -0.5, 0.7, 1.5}) {
    const double omega = 30.0;
    const double delta = -2.0;
    const auto es = inertia::eigensystem(mu, inertia::Normalization::gap_scaled);
    const auto op = inertia::correction_operator(mu, omega, delta);
    auto err = [&](double h) {
      const inertia::CMat3 dp = (inertia::eigensystem(mu + h, inertia::Normalization::gap_scaled).p -
                                 inertia::eigensystem(mu - h, inertia::Normalization::gap_scaled).p) /
                                (2.0 * h);
      return (inertia::CMat3(-(delta / omega) * es.p_inv * dp) - op.entries).cwiseAbs().maxCoeff();
    };
    const double h = 1e-2 * std::abs(mu);
    const double ratio = err(h) / err(0.5 * h);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 4.0));
  }

  const ProtocolParams p = reference(-0.05);
  const LiouvilleVec v0 = inertia::initial_ground_vector(p);
  const Trajectory exact = inertia::integrate_liouville(p, v0);
  const double d_corr = inertia::distance_series(inertia::corrected_propagate(p, v0), exact).value.back();
  const double d_in = inertia::distance_series(inertia::inertial_propagate(p, v0), exact).value.back();

  const bool ok = worst_imag < kTol.eigen_imag && lo > kTol.fd_ratio_low &&
                  hi < kTol.fd_ratio_high && d_corr <= d_in;
  return {ok, fmt("max imag %.1e, FD ratio in [%.3f, ", worst_imag, lo) +
                  fmt("%.3f], D_end corrected %.4f", hi, d_corr) + fmt(" vs inertial %.4f", d_in)};
}

Result upsilon_check() {
  const double at_zero = inertia::inertial_parameter(reference(0.0)).upsilon;
  std::vector<double> factors = oracle::reference_factors();
  factors.push_back(0.0);
  bool monotone = true;
  for (double a : factors) {
    for (double b : factors) {
      if (std::abs(a) < std::abs(b)) {
        monotone = monotone && inertia::inertial_parameter(reference(a)).upsilon <
                                   inertia::inertial_parameter(reference(b)).upsilon;
      }
    }
  }
  return {at_zero == 0.0 && monotone,
          fmt("Upsilon(0) = %.1e, Upsilon(-alpha0) = %.3g", at_zero,
              inertia::inertial_parameter(reference(-1.0)).upsilon) +
              (monotone ? ", monotone in |delta|" : ", NOT monotone")};
}

Result noise_check() {
  const ProtocolParams p = reference(-0.01);
  const auto psi0 = inertia::initial_ground_state(p);
  const double clean = inertia::normalized_energy(inertia::integrate_spinor(p, psi0)).max_value();
  const double noisy = inertia::normalized_energy(
                           inertia::integrate_spinor(p, psi0, {}, {kTol.noise_relative, kTol.noise_seed}))
                           .max_value();
  const double change = std::abs(noisy - clean) / std::abs(clean);
  return {change < kTol.noise_effect,
          fmt("max E_norm %.5f -> ", clean) + fmt("%.5f (relative change %.2e, seed 42)", noisy, change)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result determinism_check() {
  const fs::path root = fs::temp_directory_path() / "inertia_acceptance_determinism";
  fs::remove_all(root);
  std::size_t files = 0;
  bool identical = true;
  for (auto mode : {inertia::app::Mode::simulate, inertia::app::Mode::figures}) {
    inertia::app::RunConfig cfg;
    cfg.mode = mode;
    cfg.delta_list = inertia::app::reference_deltas();
    cfg.noise_relative = 0.01;
    cfg.seed = 42;
    std::ostringstream log;
    std::vector<fs::path> dirs;
    for (const char* run : {"a", "b"}) {
      cfg.output_dir = root / std::string(inertia::app::to_string(mode)) / run;
      if (inertia::app::run(cfg, log).exit_code() != 0) {
        return {false, "run failed: " + log.str()};
      }
      dirs.push_back(cfg.output_dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      if (entry.path().extension() == ".csv") {
        ++files;
        identical = identical && slurp(entry.path()) == slurp(dirs[1] / entry.path().filename());
      }
    }
  }
  fs::remove_all(root);
  return {identical && files > 0, fmt("%.0f CSV files compared", static_cast<double>(files)) +
                                      (identical ? ", byte-identical" : ", DIFFER")};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"eigensystem", eigensystem_check},
      {"dual-oracle", dual_oracle_check},
      {"norm-conservation", norm_check},
      {"constant-mu-exactness", constant_mu_check},
      {"small-delta-accuracy", small_delta_check},
      {"breakdown-ordering", breakdown_check},
      {"phase-robustness", phase_robustness_check},
      {"correction-operator", correction_check},
      {"upsilon-diagnostic", upsilon_check},
      {"noise-robustness", noise_check},
      {"determinism", determinism_check},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

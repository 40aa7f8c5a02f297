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

#include "inertia/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "inertia/errors.hpp"
#include "inertia/inertial_solution.hpp"

namespace inertia {
namespace {

bool same_grid(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ta = a.samples[i].protocol.t;
    const double tb = b.samples[i].protocol.t;
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
      return false;
    }
  }
  return true;
}

std::vector<double> distance_column(const ProtocolParams& params, const IntegratorConfig& cfg,
                                    DistanceScale scale) {
  const LiouvilleVec v0 = initial_ground_vector(params);
  const Trajectory exact = integrate_liouville(params, v0, cfg);
  const Trajectory inertial = inertial_propagate(params, v0, cfg);
  return distance_series(inertial, exact, scale).value;
}

}  // namespace

double Series::max_value() const {
  return value.empty() ? 0.0 : *std::max_element(value.begin(), value.end());
}

Series normalized_energy(const Trajectory& traj) {
  if (traj.samples.empty() || std::abs(traj.samples.front().state.h) <= 1e-14) {
    throw ZeroInitialEnergy("normalized energy needs |<H(0)>| > 1e-14");
  }
  const double h0 = traj.samples.front().state.h;
  Series out;
  out.t.reserve(traj.size());
  out.value.reserve(traj.size());
  for (const auto& s : traj.samples) {
    out.t.push_back(s.protocol.t);
    out.value.push_back(s.state.h / h0);
  }
  return out;
}

Series distance_series(const Trajectory& a, const Trajectory& b, DistanceScale scale) {
  if (!same_grid(a, b)) {
    throw GridMismatch("trajectories are sampled on different time grids");
  }
  double divisor = 1.0;
  if (scale == DistanceScale::normalized && !a.samples.empty()) {
    divisor = 0.5 * std::abs(a.samples.front().protocol.omega_rabi);
  }
  Series out;
  out.t.reserve(a.size());
  out.value.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec3 diff = a.samples[i].state.xyz() - b.samples[i].state.xyz();
    out.t.push_back(a.samples[i].protocol.t);
    out.value.push_back(diff.norm() / divisor);
  }
  return out;
}

std::vector<std::size_t> local_extrema(const Series& series) {
  std::vector<std::size_t> idx;
  const auto& y = series.value;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const double left = y[i] - y[i - 1];
    const double right = y[i + 1] - y[i];
    if (left * right < 0.0 || (left != 0.0 && right == 0.0)) {
      idx.push_back(i);
    }
  }
  return idx;
}

bool DistanceGrid::complete() const {
  return std::all_of(errors.begin(), errors.end(), [](const std::string& e) { return e.empty(); });
}

DistanceGrid distance_grid(const ProtocolParams& base, std::span<const double> deltas,
                           const IntegratorConfig& cfg, DistanceScale scale) {
  DistanceGrid grid;
  grid.base_params = base;
  grid.delta_values.assign(deltas.begin(), deltas.end());
  grid.time_grid = time_grid(base);
  grid.d.resize(deltas.size());
  grid.errors.resize(deltas.size());

  std::vector<std::future<std::vector<double>>> jobs;
  jobs.reserve(deltas.size());
  for (double delta : deltas) {
    jobs.push_back(std::async(std::launch::async, [&, delta] {
      return distance_column(base.with_delta(delta), cfg, scale);
    }));
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    try {
      grid.d[j] = jobs[j].get();
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "delta = " << grid.delta_values[j] << ": " << e.what();
      grid.errors[j] = msg.str();
    }
  }
  return grid;
}

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DegenerateInput("xs and ys differ in length");
  }
  if (xs.size() < 3) {
    throw DegenerateInput("linear fit needs at least 3 points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw DegenerateInput("all xs are equal");
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return fit;
}

std::vector<PhaseSpaceRow> phase_space_export(std::span<const Trajectory> trajs) {
  std::vector<PhaseSpaceRow> rows;
  if (trajs.empty()) {
    return rows;
  }
  for (const auto& traj : trajs) {
    if (!same_grid(traj, trajs.front())) {
      throw GridMismatch("phase-space export needs a common time grid");
    }
  }
  rows.reserve(trajs.size() * trajs.front().size());
  for (const auto& traj : trajs) {
    const std::string label(to_string(traj.label));
    for (const auto& s : traj.samples) {
      rows.push_back({label, s.protocol.t, s.state.h, s.state.l, s.state.c});
    }
  }
  return rows;
}

}  // namespace inertia

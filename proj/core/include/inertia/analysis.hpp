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

// Trajectory diagnostics: normalized energy, Euclidean distance between
// trajectories, (delta, t) distance grids and phase-space tables.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inertia/exact.hpp"
#include "inertia/protocol.hpp"

namespace inertia {

struct Series {
  std::vector<double> t;
  std::vector<double> value;

  [[nodiscard]] std::size_t size() const { return t.size(); }
  [[nodiscard]] double max_value() const;
};

/// h(t) / h(0). Throws ZeroInitialEnergy when |h(0)| <= 1e-14.
[[nodiscard]] Series normalized_energy(const Trajectory& traj);

enum class DistanceScale {
  absolute,    ///< energy units
  normalized,  ///< divided by |Omega(0)| / 2
};

/// D(t) = || (h, l, c)_a - (h, l, c)_b ||_2. Throws GridMismatch when the
/// time grids differ.
[[nodiscard]] Series distance_series(const Trajectory& a, const Trajectory& b,
                                     DistanceScale scale = DistanceScale::absolute);

/// Indices of interior local extrema (sign changes of the first difference).
[[nodiscard]] std::vector<std::size_t> local_extrema(const Series& series);

struct DistanceGrid {
  std::vector<double> delta_values;
  std::vector<double> time_grid;
  /// d[j][i]: distance at delta_values[j], time_grid[i]. Empty for failed cells.
  std::vector<std::vector<double>> d;
  /// Per-delta failure message; empty when the column was computed.
  std::vector<std::string> errors;
  ProtocolParams base_params;

  [[nodiscard]] bool complete() const;
};

/// Runs exact (Liouville) and inertial propagation from the H(0) ground state
/// for every delta, concurrently, and stores D(t) column by column.
[[nodiscard]] DistanceGrid distance_grid(const ProtocolParams& base, std::span<const double> deltas,
                                         const IntegratorConfig& cfg = {},
                                         DistanceScale scale = DistanceScale::absolute);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares. Throws DegenerateInput with fewer than 3 points or
/// when all xs coincide.
[[nodiscard]] FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

struct PhaseSpaceRow {
  std::string label;
  double t = 0.0;
  double h = 0.0;
  double l = 0.0;
  double c = 0.0;
};

/// Long-format (label, t, h, l, c) rows, trajectory by trajectory. Throws
/// GridMismatch unless all trajectories share one time grid.
[[nodiscard]] std::vector<PhaseSpaceRow> phase_space_export(std::span<const Trajectory> trajs);

}  // namespace inertia

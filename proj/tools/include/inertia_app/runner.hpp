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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "inertia/analysis.hpp"
#include "inertia/exact.hpp"
#include "inertia/inertial_solution.hpp"
#include "inertia_app/config.hpp"
#include "json.hpp"

namespace inertia::app {

/// Column order of trace_<delta>.csv and fig2_<panel>.csv.
[[nodiscard]] const std::vector<std::string>& trace_columns();
/// Column order of distance_grid.csv and fig3_grid.csv.
[[nodiscard]] const std::vector<std::string>& grid_columns();
/// Column order of fig4_trajectories.csv.
[[nodiscard]] const std::vector<std::string>& trajectory_columns();

/// All trajectories for one delta value, started in the H(0) ground state.
struct TraceResult {
  double delta_over_alpha0 = 0.0;
  ProtocolParams params;
  ProtocolCheck check;
  InertialReport report;
  Trajectory exact;
  Trajectory spinor;
  Trajectory inertial;
  Trajectory corrected;
  Trajectory adiabatic;
  std::optional<Trajectory> noisy;  ///< spinor route with field noise
  double dual_oracle_max = 0.0;     ///< max componentwise |exact - spinor|
};

[[nodiscard]] TraceResult compute_trace(const RunConfig& cfg, const ProtocolParams& base,
                                        double delta_over_alpha0);

void write_trace_csv(std::ostream& out, const TraceResult& trace);
[[nodiscard]] nlohmann::ordered_json trace_meta(const TraceResult& trace);

/// Long-format rows for every computed grid column; failed columns are skipped.
void write_grid_csv(std::ostream& out, const DistanceGrid& grid,
                    const std::vector<double>& delta_over_alpha0);

/// File name stem for a delta factor, e.g. "-0.01".
[[nodiscard]] std::string delta_tag(double delta_over_alpha0);

struct RunOutcome {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> failures;

  [[nodiscard]] int exit_code() const { return failures.empty() ? 0 : 1; }
};

/// Runs the configured mode, writing into cfg.output_dir. Progress and
/// failures go to `log`.
[[nodiscard]] RunOutcome run(const RunConfig& cfg, std::ostream& log);

}  // namespace inertia::app

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

// Run configuration for the command-line tool. Frequencies are given in kHz
// and times in ms; conversion to rad/ms happens once, in resolve().

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inertia/exact.hpp"
#include "inertia/inertial_solution.hpp"
#include "inertia/protocol.hpp"
#include "json.hpp"

namespace inertia::app {

enum class Mode { simulate, sweep, figures, validate };

[[nodiscard]] std::string_view to_string(Mode mode);
[[nodiscard]] Mode parse_mode(std::string_view text);

/// How the chirp rate "gamma_khz2" is read. kHz2 multiplies by 2 pi;
/// MHz2 additionally by 1e6 (rad/ms^2).
enum class GammaUnits { khz2, mhz2 };

[[nodiscard]] std::string_view to_string(GammaUnits units);
[[nodiscard]] GammaUnits parse_gamma_units(std::string_view text);

struct SweepSettings {
  double delta_min = -0.1;  ///< in units of alpha0
  double delta_max = 0.1;
  std::size_t delta_points = 41;
  std::size_t time_points = 200;
};

struct RunConfig {
  double alpha0_khz = 6.0;
  double gamma_khz2 = 50.0;
  GammaUnits gamma_units = GammaUnits::khz2;
  double mu0 = -1.0;
  double delta_over_alpha0 = 0.0;
  /// Horizon in ms; empty selects the automatic ten-period rule.
  std::optional<double> t_final_ms;
  double horizon_periods = 10.0;
  std::size_t n_samples = 2000;

  IntegratorConfig integrator;
  InertialThresholds thresholds;

  Mode mode = Mode::simulate;
  std::vector<double> delta_list;  ///< in units of alpha0
  std::filesystem::path output_dir = "out";
  bool include_geometric = false;
  std::uint64_t seed = 0;
  double noise_relative = 0.0;

  SweepSettings sweep;
  std::vector<double> fig4_deltas{-0.01, -0.05};
};

/// The six delta values of the reference figure set, in panel order.
[[nodiscard]] std::vector<double> reference_deltas();

/// Reads a config object; unknown keys are rejected with std::invalid_argument.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);
[[nodiscard]] nlohmann::ordered_json config_to_json(const RunConfig& cfg);

/// Throws std::invalid_argument when the config cannot describe a run.
void require_valid(const RunConfig& cfg);

[[nodiscard]] double alpha0_rad_per_ms(const RunConfig& cfg);
[[nodiscard]] double gamma_rad_per_ms2(const RunConfig& cfg);

/// Delta factors (units of alpha0) a mode operates on.
[[nodiscard]] std::vector<double> mode_deltas(const RunConfig& cfg);

/// Evenly spaced sweep factors from delta_min to delta_max.
[[nodiscard]] std::vector<double> sweep_deltas(const SweepSettings& sweep);

/// Base protocol in rad/ms and ms with delta = 0. The horizon is the fixed
/// t_final_ms or, when automatic, the common horizon over `factors`.
[[nodiscard]] ProtocolParams resolve(const RunConfig& cfg, const std::vector<double>& factors);

}  // namespace inertia::app

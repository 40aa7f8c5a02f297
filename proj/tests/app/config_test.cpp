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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "inertia_app/config.hpp"

namespace {

using inertia::app::config_from_json;
using inertia::app::Mode;
using inertia::app::RunConfig;
using nlohmann::json;

TEST(Config, DefaultsFromEmptyObject) {
  const RunConfig cfg = config_from_json(json::object());
  EXPECT_EQ(cfg.alpha0_khz, 6.0);
  EXPECT_EQ(cfg.gamma_khz2, 50.0);
  EXPECT_EQ(cfg.mu0, -1.0);
  EXPECT_FALSE(cfg.t_final_ms.has_value());
  EXPECT_EQ(cfg.mode, Mode::simulate);
  EXPECT_EQ(cfg.integrator.rel_tol, 1e-12);
  EXPECT_NEAR(inertia::app::alpha0_rad_per_ms(cfg), 12.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(inertia::app::gamma_rad_per_ms2(cfg), 100.0 * std::numbers::pi, 1e-12);
}

TEST(Config, ParsesEveryKey) {
  const json j = json::parse(R"({
    "alpha0_khz": 5, "gamma_khz2": 2, "gamma_interpretation": "MHz2", "mu0": -2,
    "delta_over_alpha0": 0.03, "t_final_ms": 0.5, "horizon_periods": 4, "n_samples": 77,
    "integrator": {"rel_tol": 1e-9, "abs_tol": 1e-11, "max_step_ms": 1e-3,
                   "method": "fixed-step-midpoint-exponential", "phase_step": 1e-3,
                   "spinor_scheme": "midpoint", "mu_floor": 1e-6},
    "thresholds": {"valid_below": 0.1, "violated_above": 0.5},
    "mode": "sweep", "delta_list": [0.01, 0.02], "output_dir": "x/y",
    "include_geometric": true, "seed": 9, "noise_relative": 0.02,
    "sweep": {"delta_min": -0.2, "delta_max": 0.2, "delta_points": 5, "time_points": 10},
    "fig4_deltas": [-0.02]
  })");
  const RunConfig cfg = config_from_json(j);
  EXPECT_EQ(cfg.gamma_units, inertia::app::GammaUnits::mhz2);
  EXPECT_NEAR(inertia::app::gamma_rad_per_ms2(cfg), 2e6 * 2.0 * std::numbers::pi, 1e-6);
  EXPECT_EQ(*cfg.t_final_ms, 0.5);
  EXPECT_EQ(cfg.n_samples, 77u);
  EXPECT_EQ(cfg.integrator.method, inertia::IntegrationMethod::fixed_step_midpoint_exponential);
  EXPECT_EQ(cfg.integrator.spinor_scheme, inertia::SpinorScheme::midpoint);
  EXPECT_EQ(cfg.integrator.max_step, 1e-3);
  EXPECT_EQ(cfg.thresholds.violated_above, 0.5);
  EXPECT_EQ(cfg.mode, Mode::sweep);
  EXPECT_EQ(cfg.delta_list, (std::vector<double>{0.01, 0.02}));
  EXPECT_EQ(cfg.output_dir, "x/y");
  EXPECT_TRUE(cfg.include_geometric);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.sweep.delta_points, 5u);
  EXPECT_EQ(cfg.fig4_deltas, (std::vector<double>{-0.02}));
}

TEST(Config, RoundTripsThroughJson) {
  RunConfig cfg;
  cfg.t_final_ms = 0.3;
  cfg.mode = Mode::figures;
  cfg.delta_list = {0.1};
  cfg.noise_relative = 0.01;
  const RunConfig back = config_from_json(inertia::app::config_to_json(cfg));
  EXPECT_EQ(back.t_final_ms, cfg.t_final_ms);
  EXPECT_EQ(back.mode, cfg.mode);
  EXPECT_EQ(back.delta_list, cfg.delta_list);
  EXPECT_EQ(back.noise_relative, cfg.noise_relative);
  EXPECT_EQ(inertia::app::config_to_json(back).dump(), inertia::app::config_to_json(cfg).dump());
}

TEST(Config, AutoHorizonKeyword) {
  EXPECT_FALSE(config_from_json(json{{"t_final_ms", "auto"}}).t_final_ms.has_value());
  EXPECT_THROW((void)config_from_json(json{{"t_final_ms", "soon"}}), std::invalid_argument);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW((void)config_from_json(json{{"alpha", 1}}), std::invalid_argument);
  EXPECT_THROW((void)config_from_json(json{{"integrator", {{"rtol", 1}}}}), std::invalid_argument);
  EXPECT_THROW((void)config_from_json(json{{"sweep", {{"points", 1}}}}), std::invalid_argument);
  EXPECT_THROW((void)config_from_json(json{{"thresholds", {{"ok", 1}}}}), std::invalid_argument);
}

TEST(Config, RejectsBadEnumerations) {
  EXPECT_THROW((void)config_from_json(json{{"mode", "plot"}}), std::invalid_argument);
  EXPECT_THROW((void)config_from_json(json{{"gamma_interpretation", "Hz2"}}),
               std::invalid_argument);
  EXPECT_THROW((void)config_from_json(json{{"integrator", {{"method", "euler"}}}}),
               std::invalid_argument);
}

TEST(Config, ValidationCatchesBadValues) {
  RunConfig cfg;
  EXPECT_NO_THROW(inertia::app::require_valid(cfg));
  cfg.n_samples = 1;
  EXPECT_THROW(inertia::app::require_valid(cfg), std::invalid_argument);
  cfg = {};
  cfg.t_final_ms = -1.0;
  EXPECT_THROW(inertia::app::require_valid(cfg), std::invalid_argument);
  cfg = {};
  cfg.sweep.delta_min = 0.2;
  EXPECT_THROW(inertia::app::require_valid(cfg), std::invalid_argument);
  cfg = {};
  cfg.noise_relative = -0.1;
  EXPECT_THROW(inertia::app::require_valid(cfg), std::invalid_argument);
}

TEST(Config, SweepGridIsSymmetricWithExactZero) {
  const auto d = inertia::app::sweep_deltas({});
  ASSERT_EQ(d.size(), 41u);
  EXPECT_EQ(d.front(), -0.1);
  EXPECT_EQ(d.back(), 0.1);
  EXPECT_EQ(d[20], 0.0);
  EXPECT_EQ(inertia::app::sweep_deltas({0.3, 0.3, 1, 10}), (std::vector<double>{0.3}));
}

TEST(Config, ModeDeltas) {
  RunConfig cfg;
  cfg.delta_over_alpha0 = 0.02;
  EXPECT_EQ(inertia::app::mode_deltas(cfg), (std::vector<double>{0.02}));
  cfg.delta_list = {0.1, 0.2};
  EXPECT_EQ(inertia::app::mode_deltas(cfg), cfg.delta_list);
  cfg.mode = Mode::sweep;
  cfg.delta_list.clear();
  EXPECT_EQ(inertia::app::mode_deltas(cfg).size(), 41u);
  cfg.mode = Mode::figures;
  EXPECT_EQ(inertia::app::mode_deltas(cfg).size(), 6u + 41u + 2u);
  EXPECT_EQ(inertia::app::reference_deltas(),
            (std::vector<double>{-1.0, -0.05, -0.01, 0.01, 0.05, 0.1}));
}

TEST(Config, ResolveUsesCommonHorizonOrFixedValue) {
  RunConfig cfg;
  const auto p = inertia::app::resolve(cfg, inertia::app::reference_deltas());
  EXPECT_NEAR(p.t_final, 0.2183195844743368, 1e-12);
  EXPECT_EQ(p.delta, 0.0);
  cfg.t_final_ms = 0.1;
  EXPECT_EQ(inertia::app::resolve(cfg, {0.5}).t_final, 0.1);
}

TEST(Config, LoadReportsMissingFile) {
  EXPECT_THROW((void)inertia::app::load_config("/nonexistent/none.json"), std::runtime_error);
}

}  // namespace

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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "inertia_app/config.hpp"
#include "inertia_app/csv.hpp"
#include "inertia_app/runner.hpp"

namespace fs = std::filesystem;

namespace {

using inertia::app::Mode;
using inertia::app::read_csv;
using inertia::app::RunConfig;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("inertia_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

RunConfig small_config(const std::string& name, Mode mode) {
  RunConfig cfg;
  cfg.mode = mode;
  cfg.n_samples = 200;
  cfg.output_dir = scratch(name);
  cfg.sweep = {-0.05, 0.05, 5, 40};
  return cfg;
}

TEST(Runner, SimulateWritesTraceSchema) {
  RunConfig cfg = small_config("simulate", Mode::simulate);
  cfg.delta_list = {-0.05, 0.01};
  std::ostringstream log;
  const auto outcome = inertia::app::run(cfg, log);
  ASSERT_EQ(outcome.exit_code(), 0) << log.str();

  for (const char* file : {"trace_-0.05.csv", "trace_0.01.csv"}) {
    const auto table = read_csv(cfg.output_dir / file);
    EXPECT_EQ(table.header, inertia::app::trace_columns());
    ASSERT_EQ(table.rows.size(), 200u);
    const auto t = table.numeric_column("t");
    EXPECT_EQ(t.front(), 0.0);
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    EXPECT_EQ(table.numeric_column("E_norm_exact").front(), 1.0);
    EXPECT_EQ(table.numeric_column("E_norm_adiabatic").front(), 1.0);
    EXPECT_NEAR(table.numeric_column("D_inertial_exact").front(), 0.0, 1e-12);
    EXPECT_EQ(table.numeric_column("mu").front(), -1.0);
  }
  const auto meta = read_json(cfg.output_dir / "meta.json");
  EXPECT_EQ(meta["tool"], "inertia");
  EXPECT_EQ(meta["units"]["time"], "ms");
  EXPECT_EQ(meta["horizon_rule"], "auto");
  EXPECT_NEAR(meta["resolved"]["t_final_ms"].get<double>(), 0.31342, 1e-4);
  ASSERT_EQ(meta["runs"].size(), 2u);
  EXPECT_EQ(meta["runs"][0]["status"], "ok");
  EXPECT_EQ(meta["runs"][0]["file"], "trace_-0.05.csv");
  EXPECT_GT(meta["runs"][0]["upsilon"].get<double>(), 0.0);
}

TEST(Runner, NoiseAddsColumn) {
  RunConfig cfg = small_config("noise", Mode::simulate);
  cfg.delta_over_alpha0 = -0.01;
  cfg.noise_relative = 0.01;
  cfg.seed = 42;
  std::ostringstream log;
  ASSERT_EQ(inertia::app::run(cfg, log).exit_code(), 0) << log.str();
  const auto table = read_csv(cfg.output_dir / "trace_-0.01.csv");
  EXPECT_EQ(table.header.back(), "E_norm_exact_noisy");
  EXPECT_EQ(table.header.size(), inertia::app::trace_columns().size() + 1);
}

TEST(Runner, SweepWritesLongFormatGrid) {
  RunConfig cfg = small_config("sweep", Mode::sweep);
  std::ostringstream log;
  ASSERT_EQ(inertia::app::run(cfg, log).exit_code(), 0) << log.str();
  const auto table = read_csv(cfg.output_dir / "distance_grid.csv");
  EXPECT_EQ(table.header, inertia::app::grid_columns());
  ASSERT_EQ(table.rows.size(), 5u * 40u);
  const auto delta = table.numeric_column("delta");
  const std::set<double> distinct(delta.begin(), delta.end());
  const auto expected = inertia::app::sweep_deltas(cfg.sweep);
  EXPECT_EQ(distinct, std::set<double>(expected.begin(), expected.end()));
  EXPECT_EQ(distinct.size(), 5u);
  EXPECT_TRUE(distinct.contains(0.0));
  const auto d = table.numeric_column("D");
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(d[i], 0.0);
    if (delta[i] == 0.0) {
      EXPECT_LT(d[i], 1e-6);
    }
  }
  const auto meta = read_json(cfg.output_dir / "grid_meta.json");
  EXPECT_EQ(meta["grid"]["time_points"], 40);
  EXPECT_EQ(meta["grid"]["cells"].size(), 5u);
}

TEST(Runner, FiguresWritesEveryPanel) {
  RunConfig cfg = small_config("figures", Mode::figures);
  std::ostringstream log;
  ASSERT_EQ(inertia::app::run(cfg, log).exit_code(), 0) << log.str();
  for (char panel = 'a'; panel <= 'f'; ++panel) {
    const auto table = read_csv(cfg.output_dir / (std::string("fig2_") + panel + ".csv"));
    EXPECT_EQ(table.header, inertia::app::trace_columns());
    EXPECT_EQ(table.rows.size(), 200u);
  }
  const auto grid = read_csv(cfg.output_dir / "fig3_grid.csv");
  EXPECT_EQ(grid.rows.size(), 5u * 40u);
  const auto traj = read_csv(cfg.output_dir / "fig4_trajectories.csv");
  EXPECT_EQ(traj.header, inertia::app::trajectory_columns());
  EXPECT_EQ(traj.rows.size(), 2u * 3u * 200u);
  std::set<std::string> labels;
  for (const auto& row : traj.rows) {
    labels.insert(row[traj.column("label")]);
  }
  EXPECT_EQ(labels, (std::set<std::string>{"exact-liouville", "inertial", "adiabatic"}));
  const auto meta = read_json(cfg.output_dir / "figures_meta.json");
  EXPECT_EQ(meta["fig2"].size(), 6u);
  EXPECT_EQ(meta["fig4"].size(), 2u);
}

TEST(Runner, ValidateReportsEachDelta) {
  RunConfig cfg = small_config("validate", Mode::validate);
  cfg.delta_list = {-0.05, 0.0};
  std::ostringstream log;
  ASSERT_EQ(inertia::app::run(cfg, log).exit_code(), 0) << log.str();
  const auto meta = read_json(cfg.output_dir / "validation.json");
  ASSERT_EQ(meta["reports"].size(), 2u);
  EXPECT_TRUE(meta["reports"][0]["ok"].get<bool>());
  EXPECT_EQ(meta["reports"][1]["upsilon"], 0.0);
}

TEST(Runner, ValidateFlagsSingularProtocol) {
  RunConfig cfg = small_config("validate_bad", Mode::validate);
  cfg.t_final_ms = 1.0;
  cfg.delta_list = {0.1};
  std::ostringstream log;
  EXPECT_EQ(inertia::app::run(cfg, log).exit_code(), 1);
  const auto meta = read_json(cfg.output_dir / "validation.json");
  EXPECT_FALSE(meta["reports"][0]["ok"].get<bool>());
  EXPECT_FALSE(meta["reports"][0]["mu_zero_crossing_ms"].is_null());
}

TEST(Runner, SingularFixedHorizonFailsButKeepsGoing) {
  RunConfig cfg = small_config("singular", Mode::simulate);
  cfg.t_final_ms = 1.0;
  cfg.delta_list = {0.1, -0.01};
  std::ostringstream log;
  const auto outcome = inertia::app::run(cfg, log);
  EXPECT_EQ(outcome.exit_code(), 1);
  EXPECT_EQ(outcome.failures.size(), 1u);
  EXPECT_FALSE(fs::exists(cfg.output_dir / "trace_0.1.csv"));
  EXPECT_TRUE(fs::exists(cfg.output_dir / "trace_-0.01.csv"));
  const auto meta = read_json(cfg.output_dir / "meta.json");
  EXPECT_EQ(meta["runs"][0]["status"], "failed");
  EXPECT_EQ(meta["runs"][1]["status"], "ok");
}

TEST(Runner, OutputsAreByteIdenticalAcrossRuns) {
  RunConfig a = small_config("det_a", Mode::figures);
  RunConfig b = small_config("det_b", Mode::figures);
  b.output_dir = scratch("det_b");
  std::ostringstream log;
  ASSERT_EQ(inertia::app::run(a, log).exit_code(), 0);
  ASSERT_EQ(inertia::app::run(b, log).exit_code(), 0);
  for (const auto& entry : fs::directory_iterator(a.output_dir)) {
    const fs::path name = entry.path().filename();
    if (name.extension() == ".csv") {
      EXPECT_EQ(slurp(entry.path()), slurp(b.output_dir / name)) << name;
    }
  }
}

TEST(Runner, DeltaTagIsShortestDecimal) {
  EXPECT_EQ(inertia::app::delta_tag(-0.05), "-0.05");
  EXPECT_EQ(inertia::app::delta_tag(-0.0), "0");
  EXPECT_EQ(inertia::app::delta_tag(1.0), "1");
}

}  // namespace

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

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "inertia_app/config.hpp"
#include "inertia_app/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Chirped two-level drive: exact, inertial and corrected dynamics"};
  app.set_version_flag("--version", "inertia 0.1.0");

  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::string> out_dir;
  bool geometric = false;
  std::vector<double> deltas;

  app.add_option("config", config_path, "JSON run configuration")->required()->check(
      CLI::ExistingFile);
  app.add_option("--mode", mode, "simulate, sweep, figures or validate")
      ->check(CLI::IsMember({"simulate", "sweep", "figures", "validate"}));
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--geometric", geometric, "include the geometric phase in the inertial solution");
  app.add_option("--delta-over-alpha0", deltas, "delta values in units of alpha0")
      ->delimiter(',')
      ->expected(1, -1);

  CLI11_PARSE(app, argc, argv);

  try {
    inertia::app::RunConfig cfg = inertia::app::load_config(config_path);
    if (mode) {
      cfg.mode = inertia::app::parse_mode(*mode);
    }
    if (out_dir) {
      cfg.output_dir = *out_dir;
    }
    if (geometric) {
      cfg.include_geometric = true;
    }
    if (!deltas.empty()) {
      cfg.delta_list = deltas;
    }
    const inertia::app::RunOutcome outcome = inertia::app::run(cfg, std::cout);
    for (const std::string& failure : outcome.failures) {
      std::cerr << "inertia: " << failure << '\n';
    }
    return outcome.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "inertia: " << e.what() << '\n';
    return 2;
  }
}

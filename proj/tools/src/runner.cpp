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

#include "inertia_app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "inertia/errors.hpp"
#include "inertia/validation.hpp"
#include "inertia_app/csv.hpp"

namespace inertia::app {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

double max_component_diff(const Trajectory& a, const Trajectory& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, (a.samples[i].state.xyz() - b.samples[i].state.xyz()).cwiseAbs().maxCoeff());
  }
  return m;
}

ojson protocol_json(const ProtocolParams& p) {
  return {{"alpha0_rad_per_ms", p.alpha0}, {"gamma_rad_per_ms2", p.gamma},
          {"mu0", p.mu0},                  {"delta_rad_per_ms", p.delta},
          {"t_final_ms", p.t_final},       {"n_samples", p.n_samples}};
}

ojson header_json(const RunConfig& cfg, const ProtocolParams& base) {
  ojson j;
  j["tool"] = "inertia";
  j["version"] = kToolVersion;
  j["mode"] = to_string(cfg.mode);
  j["units"] = {{"time", "ms"},
                {"angular_frequency", "rad/ms"},
                {"delta", "alpha0"},
                {"gamma_interpretation", to_string(cfg.gamma_units)}};
  j["horizon_rule"] = cfg.t_final_ms ? "fixed" : "auto";
  j["resolved"] = protocol_json(base);
  j["integrator"] = config_to_json(cfg)["integrator"];
  j["config"] = config_to_json(cfg);
  return j;
}

ojson report_json(const ProtocolCheck& check, const std::optional<InertialReport>& report) {
  ojson j;
  j["min_abs_mu"] = check.min_abs_mu;
  j["max_abs_omega_rabi"] = check.max_abs_omega_rabi;
  if (check.zero_crossing) {
    j["mu_zero_crossing_ms"] = *check.zero_crossing;
  } else {
    j["mu_zero_crossing_ms"] = nullptr;
  }
  if (report) {
    j["upsilon"] = report->upsilon;
    j["upsilon_mu"] = report->mu_at_max;
    j["upsilon_verdict"] = to_string(report->verdict);
  } else {
    j["upsilon"] = nullptr;
  }
  j["problems"] = check.problems;
  return j;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  fn(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

// Writes one file and records the outcome; failures never abort the run.
void emit(RunOutcome& outcome, std::ostream& log, const std::filesystem::path& path,
          const std::function<void(std::ostream&)>& fn) {
  try {
    write_file(path, fn);
    outcome.written.push_back(path);
    log << "wrote " << path.generic_string() << '\n';
  } catch (const std::exception& e) {
    outcome.failures.push_back(e.what());
    log << "error: " << e.what() << '\n';
  }
}

void emit_json(RunOutcome& outcome, std::ostream& log, const std::filesystem::path& path,
               const ojson& j) {
  emit(outcome, log, path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

// Runs compute_trace per delta, writing `name(i)` for each success. Returns
// the per-delta meta entries.
ojson trace_batch(const RunConfig& cfg, const ProtocolParams& base,
                       const std::vector<double>& factors,
                       const std::function<std::string(std::size_t)>& name, RunOutcome& outcome,
                       std::ostream& log) {
  ojson runs = ojson::array();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::string file = name(i);
    ojson entry;
    entry["delta_over_alpha0"] = factors[i];
    entry["file"] = file;
    try {
      const TraceResult trace = compute_trace(cfg, base, factors[i]);
      emit(outcome, log, cfg.output_dir / file,
           [&](std::ostream& out) { write_trace_csv(out, trace); });
      entry.update(trace_meta(trace));
      entry["status"] = "ok";
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      outcome.failures.push_back(file + ": " + e.what());
      log << "error: " << file << ": " << e.what() << '\n';
    }
    runs.push_back(std::move(entry));
  }
  return runs;
}

struct GridRun {
  DistanceGrid grid;
  ojson meta;
};

GridRun grid_run(const RunConfig& cfg, ProtocolParams base, const std::vector<double>& factors,
                 RunOutcome& outcome, std::ostream& log) {
  base.n_samples = cfg.sweep.time_points;
  std::vector<double> rates;
  rates.reserve(factors.size());
  for (double f : factors) {
    rates.push_back(f * base.alpha0);
  }
  GridRun run;
  run.grid = distance_grid(base, rates, cfg.integrator);
  run.meta["delta_over_alpha0"] = factors;
  run.meta["time_points"] = base.n_samples;
  run.meta["t_final_ms"] = base.t_final;
  run.meta["distance_scale"] = "absolute";
  ojson cells = ojson::array();
  for (std::size_t j = 0; j < factors.size(); ++j) {
    ojson c;
    c["delta_over_alpha0"] = factors[j];
    const ProtocolParams p = base.with_delta(rates[j]);
    const ValidationReport rep = validate(p, cfg.thresholds, cfg.integrator.mu_floor);
    c.update(report_json(rep.protocol, rep.inertial));
    if (run.grid.errors[j].empty()) {
      c["status"] = "ok";
      c["D_end"] = run.grid.d[j].back();
      c["D_max"] = *std::max_element(run.grid.d[j].begin(), run.grid.d[j].end());
    } else {
      c["status"] = "failed";
      c["error"] = run.grid.errors[j];
      outcome.failures.push_back("grid delta " + format_number(factors[j]) + ": " +
                                 run.grid.errors[j]);
      log << "error: grid delta " << format_number(factors[j]) << ": " << run.grid.errors[j]
          << '\n';
    }
    cells.push_back(std::move(c));
  }
  run.meta["cells"] = std::move(cells);
  return run;
}

void prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + cfg.output_dir.string() + ": " + ec.message());
  }
}

RunOutcome run_simulate(const RunConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  const std::vector<double> factors = mode_deltas(cfg);
  const ProtocolParams base = resolve(cfg, factors);
  ojson runs = trace_batch(
      cfg, base, factors, [&](std::size_t i) { return "trace_" + delta_tag(factors[i]) + ".csv"; },
      outcome, log);
  ojson meta = header_json(cfg, base);
  meta["runs"] = std::move(runs);
  emit_json(outcome, log, cfg.output_dir / "meta.json", meta);
  return outcome;
}

RunOutcome run_sweep(const RunConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  const std::vector<double> factors = mode_deltas(cfg);
  const ProtocolParams base = resolve(cfg, factors);
  GridRun run = grid_run(cfg, base, factors, outcome, log);
  emit(outcome, log, cfg.output_dir / "distance_grid.csv",
       [&](std::ostream& out) { write_grid_csv(out, run.grid, factors); });
  ojson meta = header_json(cfg, base);
  meta["grid"] = std::move(run.meta);
  emit_json(outcome, log, cfg.output_dir / "grid_meta.json", meta);
  return outcome;
}

RunOutcome run_figures(const RunConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  const ProtocolParams base = resolve(cfg, mode_deltas(cfg));
  ojson meta = header_json(cfg, base);

  const std::vector<double> panels = reference_deltas();
  ojson fig2 = trace_batch(
      cfg, base, panels,
      [](std::size_t i) { return std::string("fig2_") + static_cast<char>('a' + i) + ".csv"; },
      outcome, log);
  meta["fig2"] = std::move(fig2);

  const std::vector<double> grid_factors = sweep_deltas(cfg.sweep);
  GridRun grid = grid_run(cfg, base, grid_factors, outcome, log);
  emit(outcome, log, cfg.output_dir / "fig3_grid.csv",
       [&](std::ostream& out) { write_grid_csv(out, grid.grid, grid_factors); });
  meta["fig3"] = std::move(grid.meta);

  ojson fig4 = ojson::array();
  std::vector<std::pair<double, std::vector<PhaseSpaceRow>>> tables;
  for (double f : cfg.fig4_deltas) {
    ojson entry;
    entry["delta_over_alpha0"] = f;
    try {
      const TraceResult trace = compute_trace(cfg, base, f);
      const std::vector<Trajectory> trajs{trace.exact, trace.inertial, trace.adiabatic};
      tables.emplace_back(f, phase_space_export(trajs));
      entry["labels"] = {"exact-liouville", "inertial", "adiabatic"};
      entry["status"] = "ok";
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      outcome.failures.push_back("fig4 delta " + format_number(f) + ": " + e.what());
      log << "error: fig4 delta " << format_number(f) << ": " << e.what() << '\n';
    }
    fig4.push_back(std::move(entry));
  }
  emit(outcome, log, cfg.output_dir / "fig4_trajectories.csv", [&](std::ostream& out) {
    CsvWriter w(out, trajectory_columns());
    for (const auto& [f, rows] : tables) {
      for (const PhaseSpaceRow& r : rows) {
        w.row({r.label, format_number(f), format_number(r.t), format_number(r.h),
               format_number(r.l), format_number(r.c)});
      }
    }
  });
  meta["fig4"] = std::move(fig4);
  emit_json(outcome, log, cfg.output_dir / "figures_meta.json", meta);
  return outcome;
}

RunOutcome run_validate(const RunConfig& cfg, std::ostream& log) {
  RunOutcome outcome;
  const std::vector<double> factors = mode_deltas(cfg);
  ProtocolParams base;
  try {
    base = resolve(cfg, factors);
  } catch (const Error& e) {
    // The automatic horizon needs a regular protocol; fall back to a fixed one.
    RunConfig fixed = cfg;
    fixed.t_final_ms = 1.0;
    base = resolve(fixed, factors);
    log << "warning: automatic horizon unavailable (" << e.what() << "); using 1 ms\n";
  }
  ojson meta = header_json(cfg, base);
  ojson reports = ojson::array();
  for (double f : factors) {
    const ProtocolParams p = base.with_delta(f * base.alpha0);
    const ValidationReport rep = validate(p, cfg.thresholds, cfg.integrator.mu_floor);
    ojson entry;
    entry["delta_over_alpha0"] = f;
    entry["ok"] = rep.ok();
    entry.update(report_json(rep.protocol, rep.inertial));
    reports.push_back(std::move(entry));
    log << "delta " << format_number(f) << " alpha0: " << (rep.ok() ? "ok" : "FAILED")
        << "  min|mu| " << format_number(rep.protocol.min_abs_mu);
    if (rep.inertial) {
      log << "  upsilon " << format_number(rep.inertial->upsilon) << " ("
          << to_string(rep.inertial->verdict) << ")";
    }
    for (const std::string& problem : rep.protocol.problems) {
      log << "\n  " << problem;
    }
    log << '\n';
    if (!rep.ok()) {
      outcome.failures.push_back("delta " + format_number(f) + ": protocol is singular");
    }
  }
  meta["reports"] = std::move(reports);
  emit_json(outcome, log, cfg.output_dir / "validation.json", meta);
  return outcome;
}

}  // namespace

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols{
      "t",        "theta",           "mu",
      "Omega",    "E_norm_exact",    "E_norm_inertial",
      "E_norm_corrected", "E_norm_adiabatic", "D_inertial_exact"};
  return cols;
}

const std::vector<std::string>& grid_columns() {
  static const std::vector<std::string> cols{"delta", "t", "D"};
  return cols;
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{"label", "delta", "t", "h", "l", "c"};
  return cols;
}

std::string delta_tag(double delta_over_alpha0) {
  return format_number(delta_over_alpha0 == 0.0 ? 0.0 : delta_over_alpha0);
}

TraceResult compute_trace(const RunConfig& cfg, const ProtocolParams& base,
                          double delta_over_alpha0) {
  TraceResult r;
  r.delta_over_alpha0 = delta_over_alpha0;
  r.params = base.with_delta(delta_over_alpha0 * base.alpha0);
  r.check = check_protocol(r.params, cfg.integrator.mu_floor);
  require_nonsingular(r.params, cfg.integrator.mu_floor);
  r.report = inertial_parameter(r.params, cfg.thresholds);

  const LiouvilleVec v0 = initial_ground_vector(r.params);
  const SpinorState psi0 = initial_ground_state(r.params);
  r.exact = integrate_liouville(r.params, v0, cfg.integrator);
  r.spinor = integrate_spinor(r.params, psi0, cfg.integrator);
  if (cfg.noise_relative > 0.0) {
    r.noisy = integrate_spinor(r.params, psi0, cfg.integrator,
                               FieldNoise{cfg.noise_relative, cfg.seed});
  }
  r.inertial = inertial_propagate(r.params, v0, cfg.integrator,
                                  InertialOptions{cfg.include_geometric, Normalization::unit});
  r.corrected = corrected_propagate(r.params, v0, cfg.integrator);
  r.adiabatic = adiabatic_reference(r.params, v0, cfg.integrator);
  r.dual_oracle_max = max_component_diff(r.exact, r.spinor);
  return r;
}

void write_trace_csv(std::ostream& out, const TraceResult& trace) {
  std::vector<std::string> header = trace_columns();
  if (trace.noisy) {
    header.emplace_back("E_norm_exact_noisy");
  }
  const Series e_exact = normalized_energy(trace.exact);
  const Series e_inertial = normalized_energy(trace.inertial);
  const Series e_corrected = normalized_energy(trace.corrected);
  const Series e_adiabatic = normalized_energy(trace.adiabatic);
  const Series dist = distance_series(trace.inertial, trace.exact);
  std::optional<Series> e_noisy;
  if (trace.noisy) {
    e_noisy = normalized_energy(*trace.noisy);
  }
  CsvWriter w(out, header);
  std::vector<double> row;
  for (std::size_t i = 0; i < trace.exact.size(); ++i) {
    const ProtocolSample& s = trace.exact.samples[i].protocol;
    row = {s.t,
           s.theta,
           s.mu,
           s.omega_rabi,
           e_exact.value[i],
           e_inertial.value[i],
           e_corrected.value[i],
           e_adiabatic.value[i],
           dist.value[i]};
    if (e_noisy) {
      row.push_back(e_noisy->value[i]);
    }
    w.row(row);
  }
}

nlohmann::ordered_json trace_meta(const TraceResult& trace) {
  ojson j;
  j["protocol"] = protocol_json(trace.params);
  j.update(report_json(trace.check, trace.report));
  const Series dist = distance_series(trace.inertial, trace.exact);
  j["D_inertial_exact_max"] = *std::max_element(dist.value.begin(), dist.value.end());
  j["D_inertial_exact_end"] = dist.value.back();
  j["D_corrected_exact_end"] = distance_series(trace.corrected, trace.exact).value.back();
  j["dual_oracle_max_abs_diff"] = trace.dual_oracle_max;
  j["initial_energy"] = trace.exact.initial_energy;
  return j;
}

void write_grid_csv(std::ostream& out, const DistanceGrid& grid,
                    const std::vector<double>& delta_over_alpha0) {
  if (delta_over_alpha0.size() != grid.delta_values.size()) {
    throw std::invalid_argument("one delta label per grid column is required");
  }
  CsvWriter w(out, grid_columns());
  for (std::size_t j = 0; j < grid.delta_values.size(); ++j) {
    if (!grid.errors[j].empty()) {
      continue;
    }
    const double factor = delta_over_alpha0[j];
    for (std::size_t i = 0; i < grid.time_grid.size(); ++i) {
      w.row(std::vector<double>{factor, grid.time_grid[i], grid.d[j][i]});
    }
  }
}

RunOutcome run(const RunConfig& cfg, std::ostream& log) {
  require_valid(cfg);
  prepare_output(cfg);
  switch (cfg.mode) {
    case Mode::simulate:
      return run_simulate(cfg, log);
    case Mode::sweep:
      return run_sweep(cfg, log);
    case Mode::figures:
      return run_figures(cfg, log);
    case Mode::validate:
      return run_validate(cfg, log);
  }
  throw std::logic_error("unhandled mode");
}

}  // namespace inertia::app

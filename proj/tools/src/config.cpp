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

#include "inertia_app/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

namespace inertia::app {
namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void reject_unknown(const json& j, std::initializer_list<std::string_view> known,
                    std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    out = j.at(key).get<T>();
  }
}

std::string_view method_name(IntegrationMethod m) {
  return m == IntegrationMethod::adaptive_embedded_rk ? "adaptive-embedded-rk"
                                                      : "fixed-step-midpoint-exponential";
}

IntegrationMethod parse_method(std::string_view text) {
  if (text == "adaptive-embedded-rk") {
    return IntegrationMethod::adaptive_embedded_rk;
  }
  if (text == "fixed-step-midpoint-exponential") {
    return IntegrationMethod::fixed_step_midpoint_exponential;
  }
  throw std::invalid_argument("unknown integrator method: " + std::string(text));
}

std::string_view scheme_name(SpinorScheme s) {
  return s == SpinorScheme::magnus4 ? "magnus4" : "midpoint";
}

SpinorScheme parse_scheme(std::string_view text) {
  if (text == "magnus4") {
    return SpinorScheme::magnus4;
  }
  if (text == "midpoint") {
    return SpinorScheme::midpoint;
  }
  throw std::invalid_argument("unknown spinor scheme: " + std::string(text));
}

void read_integrator(const json& j, IntegratorConfig& cfg) {
  reject_unknown(j,
                 {"rel_tol", "abs_tol", "max_step_ms", "method", "phase_step", "spinor_scheme",
                  "mu_floor"},
                 "integrator");
  read(j, "rel_tol", cfg.rel_tol);
  read(j, "abs_tol", cfg.abs_tol);
  read(j, "max_step_ms", cfg.max_step);
  read(j, "phase_step", cfg.phase_step);
  read(j, "mu_floor", cfg.mu_floor);
  if (j.contains("method")) {
    cfg.method = parse_method(j.at("method").get<std::string>());
  }
  if (j.contains("spinor_scheme")) {
    cfg.spinor_scheme = parse_scheme(j.at("spinor_scheme").get<std::string>());
  }
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::simulate:
      return "simulate";
    case Mode::sweep:
      return "sweep";
    case Mode::figures:
      return "figures";
    case Mode::validate:
      return "validate";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::simulate, Mode::sweep, Mode::figures, Mode::validate}) {
    if (text == to_string(m)) {
      return m;
    }
  }
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

std::string_view to_string(GammaUnits units) {
  return units == GammaUnits::khz2 ? "kHz2" : "MHz2";
}

GammaUnits parse_gamma_units(std::string_view text) {
  if (text == "kHz2") {
    return GammaUnits::khz2;
  }
  if (text == "MHz2") {
    return GammaUnits::mhz2;
  }
  throw std::invalid_argument("gamma_interpretation must be kHz2 or MHz2");
}

std::vector<double> reference_deltas() { return {-1.0, -0.05, -0.01, 0.01, 0.05, 0.1}; }

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  reject_unknown(j,
                 {"alpha0_khz", "gamma_khz2", "gamma_interpretation", "mu0", "delta_over_alpha0",
                  "t_final_ms", "horizon_periods", "n_samples", "integrator", "thresholds", "mode",
                  "delta_list", "output_dir", "include_geometric", "seed", "noise_relative",
                  "sweep", "fig4_deltas"},
                 "config");
  RunConfig cfg;
  read(j, "alpha0_khz", cfg.alpha0_khz);
  read(j, "gamma_khz2", cfg.gamma_khz2);
  read(j, "mu0", cfg.mu0);
  read(j, "delta_over_alpha0", cfg.delta_over_alpha0);
  read(j, "horizon_periods", cfg.horizon_periods);
  read(j, "n_samples", cfg.n_samples);
  read(j, "delta_list", cfg.delta_list);
  read(j, "include_geometric", cfg.include_geometric);
  read(j, "seed", cfg.seed);
  read(j, "noise_relative", cfg.noise_relative);
  read(j, "fig4_deltas", cfg.fig4_deltas);
  if (j.contains("gamma_interpretation")) {
    cfg.gamma_units = parse_gamma_units(j.at("gamma_interpretation").get<std::string>());
  }
  if (j.contains("t_final_ms")) {
    const json& t = j.at("t_final_ms");
    if (t.is_string()) {
      if (t.get<std::string>() != "auto") {
        throw std::invalid_argument("t_final_ms must be a number or \"auto\"");
      }
      cfg.t_final_ms.reset();
    } else {
      cfg.t_final_ms = t.get<double>();
    }
  }
  if (j.contains("mode")) {
    cfg.mode = parse_mode(j.at("mode").get<std::string>());
  }
  if (j.contains("output_dir")) {
    cfg.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("integrator")) {
    read_integrator(j.at("integrator"), cfg.integrator);
  }
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    reject_unknown(t, {"valid_below", "violated_above"}, "thresholds");
    read(t, "valid_below", cfg.thresholds.valid_below);
    read(t, "violated_above", cfg.thresholds.violated_above);
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown(s, {"delta_min", "delta_max", "delta_points", "time_points"}, "sweep");
    read(s, "delta_min", cfg.sweep.delta_min);
    read(s, "delta_max", cfg.sweep.delta_max);
    read(s, "delta_points", cfg.sweep.delta_points);
    read(s, "time_points", cfg.sweep.time_points);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["alpha0_khz"] = cfg.alpha0_khz;
  j["gamma_khz2"] = cfg.gamma_khz2;
  j["gamma_interpretation"] = to_string(cfg.gamma_units);
  j["mu0"] = cfg.mu0;
  j["delta_over_alpha0"] = cfg.delta_over_alpha0;
  if (cfg.t_final_ms) {
    j["t_final_ms"] = *cfg.t_final_ms;
  } else {
    j["t_final_ms"] = "auto";
  }
  j["horizon_periods"] = cfg.horizon_periods;
  j["n_samples"] = cfg.n_samples;
  j["integrator"] = {{"rel_tol", cfg.integrator.rel_tol},
                     {"abs_tol", cfg.integrator.abs_tol},
                     {"max_step_ms", cfg.integrator.max_step},
                     {"method", method_name(cfg.integrator.method)},
                     {"phase_step", cfg.integrator.phase_step},
                     {"spinor_scheme", scheme_name(cfg.integrator.spinor_scheme)},
                     {"mu_floor", cfg.integrator.mu_floor}};
  j["thresholds"] = {{"valid_below", cfg.thresholds.valid_below},
                     {"violated_above", cfg.thresholds.violated_above}};
  j["mode"] = to_string(cfg.mode);
  j["delta_list"] = cfg.delta_list;
  j["output_dir"] = cfg.output_dir.generic_string();
  j["include_geometric"] = cfg.include_geometric;
  j["seed"] = cfg.seed;
  j["noise_relative"] = cfg.noise_relative;
  j["sweep"] = {{"delta_min", cfg.sweep.delta_min},
                {"delta_max", cfg.sweep.delta_max},
                {"delta_points", cfg.sweep.delta_points},
                {"time_points", cfg.sweep.time_points}};
  j["fig4_deltas"] = cfg.fig4_deltas;
  return j;
}

void require_valid(const RunConfig& cfg) {
  if (!(cfg.alpha0_khz > 0.0)) {
    throw std::invalid_argument("alpha0_khz must be positive");
  }
  if (cfg.t_final_ms && !(*cfg.t_final_ms > 0.0)) {
    throw std::invalid_argument("t_final_ms must be positive");
  }
  if (!(cfg.horizon_periods > 0.0)) {
    throw std::invalid_argument("horizon_periods must be positive");
  }
  if (cfg.n_samples < 2) {
    throw std::invalid_argument("n_samples must be at least 2");
  }
  if (cfg.noise_relative < 0.0) {
    throw std::invalid_argument("noise_relative must be non-negative");
  }
  if (cfg.sweep.delta_points < 1 || cfg.sweep.time_points < 2) {
    throw std::invalid_argument("sweep needs at least 1 delta point and 2 time points");
  }
  if (cfg.sweep.delta_points > 1 && !(cfg.sweep.delta_max > cfg.sweep.delta_min)) {
    throw std::invalid_argument("sweep.delta_max must exceed sweep.delta_min");
  }
  if (cfg.mode == Mode::sweep && mode_deltas(cfg).empty()) {
    throw std::invalid_argument("sweep mode needs a nonempty delta list");
  }
  require_valid(cfg.integrator);
}

double alpha0_rad_per_ms(const RunConfig& cfg) { return kTwoPi * cfg.alpha0_khz; }

double gamma_rad_per_ms2(const RunConfig& cfg) {
  const double scale = cfg.gamma_units == GammaUnits::mhz2 ? 1e6 : 1.0;
  return kTwoPi * cfg.gamma_khz2 * scale;
}

std::vector<double> sweep_deltas(const SweepSettings& sweep) {
  if (sweep.delta_points == 1) {
    return {sweep.delta_min};
  }
  std::vector<double> out(sweep.delta_points);
  const double span = sweep.delta_max - sweep.delta_min;
  const double last = static_cast<double>(sweep.delta_points - 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sweep.delta_min + span * static_cast<double>(i) / last;
  }
  // Pin the midpoint of a symmetric range to an exact zero.
  for (double& d : out) {
    if (std::abs(d) < 1e-12 * std::max(std::abs(sweep.delta_min), std::abs(sweep.delta_max))) {
      d = 0.0;
    }
  }
  return out;
}

std::vector<double> mode_deltas(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::simulate:
    case Mode::validate:
      return cfg.delta_list.empty() ? std::vector<double>{cfg.delta_over_alpha0} : cfg.delta_list;
    case Mode::sweep:
      return cfg.delta_list.empty() ? sweep_deltas(cfg.sweep) : cfg.delta_list;
    case Mode::figures: {
      std::vector<double> all = reference_deltas();
      const std::vector<double> grid = sweep_deltas(cfg.sweep);
      all.insert(all.end(), grid.begin(), grid.end());
      all.insert(all.end(), cfg.fig4_deltas.begin(), cfg.fig4_deltas.end());
      return all;
    }
  }
  return {};
}

ProtocolParams resolve(const RunConfig& cfg, const std::vector<double>& factors) {
  require_valid(cfg);
  ProtocolParams p;
  p.alpha0 = alpha0_rad_per_ms(cfg);
  p.gamma = gamma_rad_per_ms2(cfg);
  p.mu0 = cfg.mu0;
  p.delta = 0.0;
  p.n_samples = cfg.n_samples;
  if (cfg.t_final_ms) {
    p.t_final = *cfg.t_final_ms;
  } else {
    std::vector<double> rates;
    rates.reserve(factors.size());
    for (double f : factors) {
      rates.push_back(f * p.alpha0);
    }
    p.t_final = common_horizon(p, rates, cfg.horizon_periods, cfg.integrator.mu_floor);
  }
  return p;
}

}  // namespace inertia::app

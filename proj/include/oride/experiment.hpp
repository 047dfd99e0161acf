//
// Copyright 2026 The oride-triangulation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Experiment grid runner: configuration, presets, seeded trial fan-out and
// tabular output.

#ifndef ORIDE_EXPERIMENT_HPP_
#define ORIDE_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "oride/attack_exact.hpp"
#include "oride/attack_noisy.hpp"
#include "oride/candidates.hpp"
#include "oride/errors.hpp"
#include "oride/eval.hpp"
#include "oride/rng.hpp"
#include "oride/simworld.hpp"

namespace oride {

enum class Variant {
  kAuto,  // exact when rho == 0, noisy otherwise
  kExact,
  kNoisy,
};

struct ExperimentConfig {
  Variant variant = Variant::kAuto;
  std::vector<double> zones_km2{100.0};
  std::vector<std::size_t> drivers{25, 50, 75, 100};
  std::vector<double> rhos{50.0};
  std::vector<std::size_t> adversaries{12};
  std::optional<double> tau;  // unset: default_tau per cell
  std::size_t trials = 20;
  std::uint64_t seed = 2022;
  NearbyFilter nearby_filter = NearbyFilter::kDedup;
  AdversaryLayout layout;
  bool snap_to_integer = false;
  std::size_t jobs = 1;
  bool record_timing = false;
};

// Clustering threshold used when none is configured: 2 rho, tightened to
// 1.5 rho in the crowded small-zone cells.
inline double default_tau(double zone_km2, std::size_t n, double rho) {
  if (zone_km2 <= 25.0 && n >= 75) return 1.5 * rho;
  return 2.0 * rho;
}

struct Cell {
  double zone_km2 = 0.0;
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t m = 0;
  double tau = 0.0;
  Variant variant = Variant::kNoisy;  // resolved, never kAuto

  CellKey key() const { return {zone_km2, n, rho, m, tau}; }
};

inline Variant resolve_variant(Variant v, double rho) {
  if (v != Variant::kAuto) return v;
  return rho == 0.0 ? Variant::kExact : Variant::kNoisy;
}

// Expands the grid in (zone, m, rho, n) order and checks each cell.
inline std::vector<Cell> expand_cells(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.zones_km2.empty() || config.drivers.empty() || config.rhos.empty() ||
      config.adversaries.empty()) {
    throw ConfigError("every grid axis needs at least one value");
  }
  std::vector<Cell> cells;
  for (double zone : config.zones_km2) {
    zone_from_km2(zone);
    for (std::size_t m : config.adversaries) {
      for (double rho : config.rhos) {
        if (!(rho >= 0.0)) throw ConfigError("rho must be non-negative");
        for (std::size_t n : config.drivers) {
          if (n < 1) throw ConfigError("at least one driver is required");
          Cell cell{zone, n, rho, m, 0.0, resolve_variant(config.variant, rho)};
          if (cell.variant == Variant::kExact) {
            if (m < 3) throw ConfigError("exact attack needs at least 3 adversaries");
          } else {
            if (rho <= 0.0) throw ConfigError("noisy attack needs rho > 0");
            cell.tau = config.tau.value_or(default_tau(zone, n, rho));
            if (!(cell.tau > 0.0)) throw ConfigError("tau must be positive");
          }
          if (m < 4) throw ConfigError("at least 4 adversaries are required");
          cells.push_back(cell);
        }
      }
    }
  }
  return cells;
}

// Seed for a cell, derived from the master seed and the scenario (not tau or
// the attack variant), so the same scenario sees the same worlds everywhere.
inline std::uint64_t cell_seed(std::uint64_t master, const Cell& cell) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(cell.zone_km2));
  h = splitmix64(h ^ static_cast<std::uint64_t>(cell.n));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(cell.rho));
  h = splitmix64(h ^ static_cast<std::uint64_t>(cell.m));
  return h;
}

// Everything needed to redraw one trial.
struct TrialArtifacts {
  Zone zone;
  double rho = 0.0;
  double ring_radius = 0.0;
  std::vector<Point> drivers;
  std::vector<Point> adversaries;
  CandidateSet recovered;
  std::vector<long> matched_driver;
};

struct TrialOutcome {
  TrialReport report;
  double runtime_ms = 0.0;  // attack only, excluding simulation and scoring
  TrialArtifacts artifacts;
};

inline TrialOutcome run_trial(const ExperimentConfig& config, const Cell& cell,
                              std::uint64_t trial) {
  const Zone zone = zone_from_km2(cell.zone_km2);
  ScenarioParams params;
  params.drivers = cell.n;
  params.adversaries = cell.m;
  params.rho = cell.rho;
  params.tau = cell.tau;
  params.seed = cell_seed(config.seed, cell);
  params.snap_to_integer = config.snap_to_integer;

  World world = make_world(zone, params, trial, config.layout);
  const std::vector<DistanceList> lists = sp_round_all(world, params, trial);
  const std::vector<AdversaryView> views = make_views(world, lists);

  const auto start = std::chrono::steady_clock::now();
  CandidateSet recovered;
  if (cell.variant == Variant::kExact) {
    recovered = run_exact_attack(views);
  } else {
    recovered = run_noisy_attack(views, {cell.rho, cell.tau, config.nearby_filter});
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialOutcome outcome;
  outcome.report = validate(recovered, world.drivers, cell.rho);
  outcome.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  outcome.artifacts.zone = zone;
  outcome.artifacts.rho = cell.rho;
  outcome.artifacts.ring_radius = config.layout.ring_fraction * zone.side;
  outcome.artifacts.drivers = std::move(world.drivers);
  outcome.artifacts.adversaries = std::move(world.adversaries);
  outcome.artifacts.recovered = std::move(recovered);
  outcome.artifacts.matched_driver = outcome.report.matched_driver;
  return outcome;
}

struct CellResult {
  Cell cell;
  ExperimentSummary summary;
  double mean_runtime_ms = 0.0;
  std::vector<TrialOutcome> trials;  // in trial order
};

// Runs every trial of a cell on up to config.jobs threads. Results are
// stored by trial index, so output does not depend on scheduling.
inline CellResult run_cell(const ExperimentConfig& config, const Cell& cell) {
  CellResult result;
  result.cell = cell;
  result.trials.resize(config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      try {
        result.trials[t] = run_trial(config, cell, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, config.trials);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialReport> reports;
  reports.reserve(result.trials.size());
  double runtime = 0.0;
  for (const TrialOutcome& t : result.trials) {
    reports.push_back(t.report);
    runtime += t.runtime_ms;
  }
  result.summary = aggregate(reports, cell.key());
  result.mean_runtime_ms = runtime / static_cast<double>(result.trials.size());
  return result;
}

inline std::vector<CellResult> run_experiment(const ExperimentConfig& config) {
  std::vector<CellResult> results;
  for (const Cell& cell : expand_cells(config)) results.push_back(run_cell(config, cell));
  return results;
}

// ---------------------------------------------------------------------------
// Configuration text and presets.

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v)) {
    throw ConfigError("invalid number for " + key + ": '" + text + "'");
  }
  return v;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] != '-') v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw ConfigError("invalid count for " + key + ": '" + text + "'");
  }
  return v;
}

inline std::vector<double> parse_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError(key + " needs at least one value");
  return out;
}

inline std::vector<std::size_t> parse_counts(const std::string& key, const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(text)) {
    out.push_back(static_cast<std::size_t>(parse_uint(key, item)));
  }
  if (out.empty()) throw ConfigError(key + " needs at least one value");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + text + "'");
}

}  // namespace detail

inline Variant parse_variant(const std::string& text) {
  if (text == "exact") return Variant::kExact;
  if (text == "noisy") return Variant::kNoisy;
  if (text == "auto") return Variant::kAuto;
  throw ConfigError("unknown variant '" + text + "' (expected exact|noisy|auto)");
}

inline NearbyFilter parse_nearby_filter(const std::string& text) {
  if (text == "dedup") return NearbyFilter::kDedup;
  if (text == "pseudocode") return NearbyFilter::kPseudocode;
  throw ConfigError("unknown nearby filter '" + text + "' (expected pseudocode|dedup)");
}

// Applies one `key = value` setting. Keys match the long command-line flags
// with '-' replaced by '_'.
inline void apply_setting(ExperimentConfig& config, const std::string& key,
                          const std::string& value) {
  if (key == "variant") {
    config.variant = parse_variant(value);
  } else if (key == "zone_km2") {
    config.zones_km2 = detail::parse_doubles(key, value);
  } else if (key == "drivers") {
    config.drivers = detail::parse_counts(key, value);
  } else if (key == "rho") {
    config.rhos = detail::parse_doubles(key, value);
  } else if (key == "adversaries") {
    config.adversaries = detail::parse_counts(key, value);
  } else if (key == "tau") {
    if (value == "auto") {
      config.tau.reset();
    } else {
      config.tau = detail::parse_double(key, value);
    }
  } else if (key == "trials") {
    config.trials = static_cast<std::size_t>(detail::parse_uint(key, value));
  } else if (key == "seed") {
    config.seed = detail::parse_uint(key, value);
  } else if (key == "nearby_filter") {
    config.nearby_filter = parse_nearby_filter(value);
  } else if (key == "ring_fraction") {
    config.layout.ring_fraction = detail::parse_double(key, value);
  } else if (key == "snap_to_integer") {
    config.snap_to_integer = detail::parse_bool(key, value);
  } else if (key == "jobs") {
    config.jobs = static_cast<std::size_t>(detail::parse_uint(key, value));
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

// Flat `key = value` text; '#' starts a comment.
inline void apply_config_text(ExperimentConfig& config, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
  }
}

inline void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  apply_config_text(config, in);
}

// Built-in presets, identical to the files under presets/.
inline const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> presets = {
      {"table1",
       "variant = exact\nzone_km2 = 25, 100\ndrivers = 25, 50, 75, 100\nrho = 0\n"
       "adversaries = 4\n"},
      {"table2",
       "variant = noisy\nzone_km2 = 100\ndrivers = 25, 50, 75, 100\n"
       "rho = 50, 75, 100, 125, 150\nadversaries = 12\n"},
      {"table3",
       "variant = noisy\nzone_km2 = 25\ndrivers = 25, 50, 75, 100\nrho = 50, 75, 100\n"
       "adversaries = 12\n"},
      {"table4",
       "variant = noisy\nzone_km2 = 100, 25\ndrivers = 75\nrho = 50\n"
       "adversaries = 4, 8, 12, 16\n"},
      {"mobile",
       "variant = noisy\nzone_km2 = 100\ndrivers = 25, 50, 75, 100\nrho = 75\n"
       "adversaries = 12\n"},
  };
  return presets;
}

inline void apply_preset(ExperimentConfig& config, const std::string& name) {
  const auto& presets = preset_texts();
  const auto it = presets.find(name);
  if (it == presets.end()) throw ConfigError("unknown preset '" + name + "'");
  std::istringstream in(it->second);
  apply_config_text(config, in);
}

// ---------------------------------------------------------------------------
// Output.

namespace detail {

inline std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "zone_km2,n,rho_m,m,tau_m,trials,mean_pct,stddev_pct,mean_eta,mean_runtime_ms";

// One row per cell. Runtime is wall-clock and only written when requested;
// otherwise the column holds NA and the output is reproducible byte for byte.
inline std::string to_csv(const std::vector<CellResult>& results, bool with_timing) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const CellResult& r : results) {
    const CellKey& k = r.summary.key;
    out << detail::format("%g", k.zone_km2) << ',' << k.n << ',' << detail::format("%g", k.rho)
        << ',' << k.m << ',' << detail::format("%g", k.tau) << ',' << r.summary.trials << ','
        << detail::format("%.2f", r.summary.mean_percentage) << ','
        << detail::format("%.2f", r.summary.stddev_percentage) << ','
        << detail::format("%.2f", r.summary.mean_eta) << ','
        << (with_timing ? detail::format("%.3f", r.mean_runtime_ms) : std::string("NA")) << '\n';
  }
  return out.str();
}

}  // namespace oride

#endif  // ORIDE_EXPERIMENT_HPP_

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

// oride_sim: runs triangulation-attack experiment grids and writes one
// summary row per cell.
//
// Exit status: 0 on success, 2 on configuration errors, 1 on runtime errors.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oride/experiment.hpp"
#include "oride/report_json.hpp"
#include "oride/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::optional<std::string> preset;
  std::optional<std::string> config_file;
  std::optional<std::string> variant;
  std::optional<std::string> zone_km2;
  std::optional<std::string> drivers;
  std::optional<std::string> rho;
  std::optional<std::string> adversaries;
  std::optional<std::string> tau;
  std::optional<std::string> trials;
  std::optional<std::string> seed;
  std::optional<std::string> nearby_filter;
  std::optional<std::string> ring_fraction;
  std::optional<std::string> jobs;
  bool snap_to_integer = false;
  bool timing = false;
  std::string out;
  std::string format = "csv";
  std::optional<std::size_t> svg_trial;
  std::string svg_dir = ".";
};

oride::ExperimentConfig build_config(const Options& opt) {
  oride::ExperimentConfig config;
  if (opt.preset) oride::apply_preset(config, *opt.preset);
  if (opt.config_file) oride::apply_config_file(config, *opt.config_file);
  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"variant", &opt.variant},         {"zone_km2", &opt.zone_km2},
      {"drivers", &opt.drivers},         {"rho", &opt.rho},
      {"adversaries", &opt.adversaries}, {"tau", &opt.tau},
      {"trials", &opt.trials},           {"seed", &opt.seed},
      {"nearby_filter", &opt.nearby_filter}, {"ring_fraction", &opt.ring_fraction},
      {"jobs", &opt.jobs},
  };
  for (const auto& [key, value] : overrides) {
    if (*value) oride::apply_setting(config, key, **value);
  }
  if (opt.snap_to_integer) config.snap_to_integer = true;
  config.record_timing = opt.timing;
  return config;
}

std::string svg_name(const oride::Cell& cell, std::size_t trial) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "scatter_z%g_n%zu_rho%g_m%zu_t%zu.svg", cell.zone_km2, cell.n,
                cell.rho, cell.m, trial);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulation attacks on permuted ride-hailing distance disclosures"};
  Options opt;
  app.add_option("--preset", opt.preset, "Built-in grid: table1|table2|table3|table4|mobile");
  app.add_option("--config", opt.config_file, "Flat key = value config file");
  app.add_option("--variant", opt.variant, "exact|noisy|auto");
  app.add_option("--zone-km2", opt.zone_km2, "Zone area(s) in km^2, comma separated");
  app.add_option("--drivers", opt.drivers, "Driver count(s), comma separated");
  app.add_option("--rho", opt.rho, "Perturbation radius/radii in meters, comma separated");
  app.add_option("--adversaries", opt.adversaries, "Adversary count(s), comma separated");
  app.add_option("--tau", opt.tau, "Clustering threshold in meters, or 'auto'");
  app.add_option("--trials", opt.trials, "Trials per cell (default 20)");
  app.add_option("--seed", opt.seed, "Master seed");
  app.add_option("--nearby-filter", opt.nearby_filter, "pseudocode|dedup");
  app.add_option("--ring-fraction", opt.ring_fraction, "Adversary ring radius / zone side");
  app.add_option("--jobs", opt.jobs, "Parallel trials per cell");
  app.add_flag("--snap-to-integer", opt.snap_to_integer, "Round locations to whole meters");
  app.add_flag("--timing", opt.timing, "Fill mean_runtime_ms (output no longer reproducible)");
  app.add_option("--out", opt.out, "Output file (default stdout)");
  app.add_option("--format", opt.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--svg", opt.svg_trial, "Write a scatter SVG of this trial for every cell");
  app.add_option("--svg-dir", opt.svg_dir, "Directory for SVG files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  oride::ExperimentConfig config;
  std::vector<oride::Cell> cells;
  try {
    config = build_config(opt);
    cells = oride::expand_cells(config);
    if (opt.svg_trial && *opt.svg_trial >= config.trials) {
      throw oride::ConfigError("--svg trial id must be below --trials");
    }
  } catch (const oride::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::vector<oride::CellResult> results;
    for (const oride::Cell& cell : cells) {
      results.push_back(oride::run_cell(config, cell));
      if (opt.svg_trial) {
        const auto& trial = results.back().trials[*opt.svg_trial];
        write_file(std::filesystem::path(opt.svg_dir) / svg_name(cell, *opt.svg_trial),
                   oride::render_scatter(trial.artifacts));
      }
    }
    const std::string text = opt.format == "json"
                                 ? oride::to_json(results, config.record_timing).dump(2) + "\n"
                                 : oride::to_csv(results, config.record_timing);
    if (opt.out.empty()) {
      std::cout << text;
    } else {
      write_file(opt.out, text);
    }
  } catch (const oride::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

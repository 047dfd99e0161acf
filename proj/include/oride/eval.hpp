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

#ifndef ORIDE_EVAL_HPP_
#define ORIDE_EVAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "oride/candidates.hpp"
#include "oride/geom.hpp"

namespace oride {

struct TrialReport {
  std::size_t n = 0;
  std::size_t eta = 0;    // number of recovered points
  std::size_t valid = 0;  // recovered points matched to a distinct driver
  double percentage = 0.0;
  // Distance from each recovered point to its nearest true driver.
  std::vector<double> nearest_truth_distance;
  // For each recovered point, the matched driver index or -1.
  std::vector<long> matched_driver;
};

// Radius within which a recovered point counts as a driver location.
inline double validity_radius(double rho) { return rho > 0.0 ? 2.0 * rho : kGeomEpsilon; }

inline double recovery_percentage(std::size_t valid, std::size_t n, std::size_t eta) {
  const std::size_t denom = std::max(n, eta);
  return denom == 0 ? 0.0 : 100.0 * static_cast<double>(valid) / static_cast<double>(denom);
}

// Scores a trial. Recovered points and drivers are matched one-to-one,
// closest pairs first, among pairs no farther apart than validity_radius.
inline TrialReport validate(const CandidateSet& recovered, std::span<const Point> truth,
                            double rho) {
  const double radius = validity_radius(rho);
  TrialReport report;
  report.n = truth.size();
  report.eta = recovered.size();
  report.nearest_truth_distance.assign(report.eta, std::numeric_limits<double>::infinity());
  report.matched_driver.assign(report.eta, -1);

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < report.eta; ++i) {
    for (std::size_t j = 0; j < truth.size(); ++j) {
      const double d = dist(recovered.points[i], truth[j]);
      report.nearest_truth_distance[i] = std::min(report.nearest_truth_distance[i], d);
      if (d <= radius) pairs.emplace_back(d, i, j);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> driver_taken(truth.size(), false);
  for (const auto& [d, i, j] : pairs) {
    if (report.matched_driver[i] >= 0 || driver_taken[j]) continue;
    report.matched_driver[i] = static_cast<long>(j);
    driver_taken[j] = true;
    ++report.valid;
  }
  report.percentage = recovery_percentage(report.valid, report.n, report.eta);
  return report;
}

// Grid cell identity: zone, drivers, perturbation, adversaries, threshold.
struct CellKey {
  double zone_km2 = 0.0;
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t m = 0;
  double tau = 0.0;
};

struct ExperimentSummary {
  CellKey key;
  std::size_t trials = 0;
  double mean_percentage = 0.0;
  double stddev_percentage = 0.0;  // sample standard deviation
  double mean_eta = 0.0;
  std::vector<double> percentages;
};

inline ExperimentSummary aggregate(std::span<const TrialReport> reports, const CellKey& key) {
  if (reports.empty()) throw std::invalid_argument("aggregate needs at least one report");
  ExperimentSummary s;
  s.key = key;
  s.trials = reports.size();
  double sum = 0.0;
  double eta_sum = 0.0;
  for (const TrialReport& r : reports) {
    s.percentages.push_back(r.percentage);
    sum += r.percentage;
    eta_sum += static_cast<double>(r.eta);
  }
  const double count = static_cast<double>(s.trials);
  s.mean_percentage = sum / count;
  s.mean_eta = eta_sum / count;
  if (s.trials > 1) {
    double sq = 0.0;
    for (double p : s.percentages) sq += (p - s.mean_percentage) * (p - s.mean_percentage);
    s.stddev_percentage = std::sqrt(sq / (count - 1.0));
  }
  return s;
}

}  // namespace oride

#endif  // ORIDE_EVAL_HPP_

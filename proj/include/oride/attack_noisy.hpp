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

// Recovery of approximate driver locations when every reported location is
// perturbed uniformly within rho of the true one.
//
// Two independent pivot pairs, (A1, A2) and (A3, A4), each produce a
// candidate list from pairwise circle intersections. A candidate survives an
// adversary when one of its circles meets the radius-2rho circle around the
// candidate. Both lists are then thinned with threshold tau and the points of
// the first list that have a partner in the second within tau are reported.
// Every correct output lies within 2rho of a true driver.

#ifndef ORIDE_ATTACK_NOISY_HPP_
#define ORIDE_ATTACK_NOISY_HPP_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "oride/candidates.hpp"
#include "oride/errors.hpp"
#include "oride/geom.hpp"

namespace oride {

// How FilterOutNearbyInvalidPoints thins a candidate list.
enum class NearbyFilter {
  // Keep one representative per group of points within tau of each other;
  // isolated points are kept.
  kDedup,
  // Keep L[i] iff some later L[j] lies within tau; isolated points and the
  // last member of each group are dropped.
  kPseudocode,
};

struct NoisyAttackConfig {
  double rho = 50.0;
  double tau = 100.0;
  NearbyFilter nearby_filter = NearbyFilter::kDedup;
};

// Keeps p iff some circle of `gamma` meets the circle of radius 2 rho about
// p (tangency counts; containment without contact does not). Stops at the
// first matching radius.
inline CandidateSet filter_out_superfluous_points(const AdversaryView& gamma,
                                                  const CandidateSet& candidates,
                                                  double rho) {
  const double probe = 2.0 * rho;
  CandidateSet out;
  for (const Point& p : candidates.points) {
    const double d = dist(p, gamma.position);
    for (double r : gamma.distances.radii) {
      const CircleRelation rel = classify_at_distance(d, probe, r);
      if (rel == CircleRelation::kCrossing || rel == CircleRelation::kTangent) {
        out.points.push_back(p);
        break;
      }
    }
  }
  return out;
}

inline CandidateSet filter_out_nearby_invalid_points(const CandidateSet& candidates, double tau,
                                                     NearbyFilter mode = NearbyFilter::kDedup) {
  const auto& pts = candidates.points;
  CandidateSet out;
  PointGrid grid(tau);
  if (mode == NearbyFilter::kDedup) {
    for (const Point& p : pts) {
      const bool near_kept =
          grid.visit_near(p, [&](std::size_t k) { return dist(p, out.points[k]) <= tau; });
      if (near_kept) continue;
      grid.insert(p, out.points.size());
      out.points.push_back(p);
    }
    return out;
  }

  for (std::size_t i = 0; i < pts.size(); ++i) grid.insert(pts[i], i);
  PointGrid kept(tau);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point& p = pts[i];
    const bool has_later_neighbour =
        grid.visit_near(p, [&](std::size_t j) { return j > i && dist(p, pts[j]) <= tau; });
    if (!has_later_neighbour) continue;
    const bool present =
        kept.visit_near(p, [&](std::size_t k) { return out.points[k] == p; });
    if (present) continue;
    kept.insert(p, out.points.size());
    out.points.push_back(p);
  }
  return out;
}

// Points of `first` with a point of `second` within tau. Pairs that coincide
// to within kGeomEpsilon are skipped rather than matched.
inline CandidateSet select_likely_points(const CandidateSet& first, const CandidateSet& second,
                                         double tau) {
  PointGrid grid(tau);
  for (std::size_t j = 0; j < second.size(); ++j) grid.insert(second.points[j], j);
  CandidateSet out;
  PointGrid kept(tau);
  for (const Point& p : first.points) {
    const bool matched = grid.visit_near(p, [&](std::size_t j) {
      const double d = dist(p, second.points[j]);
      return d > kGeomEpsilon && d <= tau;
    });
    if (!matched) continue;
    const bool present = kept.visit_near(p, [&](std::size_t k) { return out.points[k] == p; });
    if (present) continue;
    kept.insert(p, out.points.size());
    out.points.push_back(p);
  }
  return out;
}

// Intermediate candidate lists of one run, retained for inspection.
struct NoisyAttackTrace {
  CandidateSet first_intersections;
  CandidateSet second_intersections;
  CandidateSet first_filtered;
  CandidateSet second_filtered;
  CandidateSet first_thinned;
  CandidateSet second_thinned;
  CandidateSet output;
};

inline NoisyAttackTrace run_noisy_attack_traced(std::span<const AdversaryView> views,
                                                const NoisyAttackConfig& config) {
  if (views.size() < 4) {
    throw ConfigError("noisy attack needs at least 4 adversaries, got " +
                      std::to_string(views.size()));
  }
  if (!(config.rho > 0.0)) throw ConfigError("noisy attack needs rho > 0");
  if (!(config.tau > 0.0)) throw ConfigError("noisy attack needs tau > 0");

  NoisyAttackTrace trace;
  trace.first_intersections = obtain_circle_intersection_points(views[0], views[1]);
  trace.first_filtered = trace.first_intersections;
  for (std::size_t k = 2; k < views.size(); ++k) {
    trace.first_filtered = filter_out_superfluous_points(views[k], trace.first_filtered, config.rho);
  }

  trace.second_intersections = obtain_circle_intersection_points(views[2], views[3]);
  trace.second_filtered = trace.second_intersections;
  for (std::size_t k = 0; k < views.size(); ++k) {
    if (k == 2 || k == 3) continue;
    trace.second_filtered =
        filter_out_superfluous_points(views[k], trace.second_filtered, config.rho);
  }

  trace.first_thinned =
      filter_out_nearby_invalid_points(trace.first_filtered, config.tau, config.nearby_filter);
  trace.second_thinned =
      filter_out_nearby_invalid_points(trace.second_filtered, config.tau, config.nearby_filter);
  trace.output = select_likely_points(trace.first_thinned, trace.second_thinned, config.tau);
  std::sort(trace.output.points.begin(), trace.output.points.end());
  return trace;
}

// Pivots are views 0,1 and 2,3; all other views filter both lists.
inline CandidateSet run_noisy_attack(std::span<const AdversaryView> views,
                                     const NoisyAttackConfig& config) {
  return run_noisy_attack_traced(views, config).output;
}

}  // namespace oride

#endif  // ORIDE_ATTACK_NOISY_HPP_

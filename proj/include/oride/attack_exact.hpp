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

// Recovery of every driver from exact but permuted distance lists.
//
// Two pivot adversaries intersect all their circles pairwise; a true driver
// location lies on one circle of every other adversary, while a ghost point
// from a mismatched pair generically lies on none. Filtering the pivot
// intersections through the remaining adversaries therefore leaves exactly
// the driver set.

#ifndef ORIDE_ATTACK_EXACT_HPP_
#define ORIDE_ATTACK_EXACT_HPP_

#include <span>
#include <string>

#include "oride/candidates.hpp"
#include "oride/errors.hpp"
#include "oride/geom.hpp"

namespace oride {

// Keeps the points of `candidates` lying within eps of at least one circle
// of adversary `gamma`. Input order is preserved.
inline CandidateSet filter_in_correct_coordinates(const AdversaryView& gamma,
                                                  const CandidateSet& candidates,
                                                  double eps = kGeomEpsilon) {
  CandidateSet out;
  for (const Point& p : candidates.points) {
    const double d = dist(p, gamma.position);
    for (double r : gamma.distances.radii) {
      if (std::abs(d - r) <= eps) {
        out.points.push_back(p);
        break;
      }
    }
  }
  return out;
}

// Adversaries 0 and 1 are the pivots; every other view filters.
inline CandidateSet run_exact_attack(std::span<const AdversaryView> views,
                                     double eps = kGeomEpsilon) {
  if (views.size() < 3) {
    throw ConfigError("exact attack needs at least 3 adversaries, got " +
                      std::to_string(views.size()));
  }
  CandidateSet candidates = obtain_circle_intersection_points(views[0], views[1]);
  for (std::size_t k = 2; k < views.size() && !candidates.empty(); ++k) {
    candidates = filter_in_correct_coordinates(views[k], candidates, eps);
  }
  return merge_duplicates(candidates, eps);
}

}  // namespace oride

#endif  // ORIDE_ATTACK_EXACT_HPP_

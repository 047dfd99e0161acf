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

#ifndef ORIDE_CANDIDATES_HPP_
#define ORIDE_CANDIDATES_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "oride/geom.hpp"
#include "oride/simworld.hpp"

namespace oride {

// Ordered list of candidate driver locations.
struct CandidateSet {
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// What the colluding adversaries pool: each rider's position and its
// permuted distance list.
struct AdversaryView {
  Point position;
  DistanceList distances;
};

inline std::vector<AdversaryView> make_views(const World& world,
                                             std::span<const DistanceList> lists) {
  std::vector<AdversaryView> views;
  views.reserve(lists.size());
  for (const DistanceList& list : lists) {
    views.push_back({world.adversaries.at(list.adversary_index), list});
  }
  return views;
}

// Intersections of every circle of `alpha` with every circle of `beta`, in
// (i, j) loop order with each pair's points sorted. At most 2 n^2 points.
inline CandidateSet obtain_circle_intersection_points(const AdversaryView& alpha,
                                                      const AdversaryView& beta) {
  CandidateSet out;
  const auto& ra = alpha.distances.radii;
  const auto& rb = beta.distances.radii;
  out.points.reserve(2 * ra.size() * rb.size());
  for (double r_alpha : ra) {
    const Circle ca{alpha.position, r_alpha};
    for (double r_beta : rb) {
      const Circle cb{beta.position, r_beta};
      if (!circles_intersect(ca, cb)) continue;
      for (const Point& p : circle_intersection(ca, cb)) out.points.push_back(p);
    }
  }
  return out;
}

// Uniform bucket grid over point indices. With cell size >= r, every point
// within r of a query lies in the query's cell or one of its 8 neighbours.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell > 0.0 ? cell : 1.0) {}

  void insert(Point p, std::size_t index) { buckets_[key(cell_of(p.x), cell_of(p.y))].push_back(index); }

  // Calls visit(index) for every inserted index in the 3x3 block around p;
  // stops early when visit returns true. Returns whether it stopped early.
  template <typename Visit>
  bool visit_near(Point p, Visit&& visit) const {
    const std::int64_t cx = cell_of(p.x);
    const std::int64_t cy = cell_of(p.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = buckets_.find(key(cx + dx, cy + dy));
        if (it == buckets_.end()) continue;
        for (std::size_t index : it->second) {
          if (visit(index)) return true;
        }
      }
    }
    return false;
  }

 private:
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xFFFFFFFFULL);
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

// Drops points lying within eps of an earlier kept point; keeps first
// occurrences in order.
inline CandidateSet merge_duplicates(const CandidateSet& in, double eps) {
  CandidateSet out;
  for (const Point& p : in.points) {
    bool duplicate = false;
    for (const Point& q : out.points) {
      if (dist(p, q) <= eps) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.points.push_back(p);
  }
  return out;
}

}  // namespace oride

#endif  // ORIDE_CANDIDATES_HPP_

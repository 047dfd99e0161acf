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

// Simulated ride-hailing zone: drivers, colluding adversary riders, and the
// service provider's permuted (optionally perturbed) distance disclosures.
// Encryption is not modelled; an adversary sees exactly what it would after
// decrypting its response list.

#ifndef ORIDE_SIMWORLD_HPP_
#define ORIDE_SIMWORLD_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "oride/errors.hpp"
#include "oride/geom.hpp"
#include "oride/rng.hpp"

namespace oride {

// Axis-aligned square [0, side]^2, in meters.
struct Zone {
  double side = 0.0;

  double area_km2() const { return side * side / 1e6; }
  Point center() const { return {side / 2.0, side / 2.0}; }
  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= side && p.y >= 0.0 && p.y <= side;
  }
  bool strictly_contains(Point p) const {
    return p.x > 0.0 && p.x < side && p.y > 0.0 && p.y < side;
  }
};

inline constexpr double kSmallZoneSide = 5000.0;   // 25 km^2
inline constexpr double kLargeZoneSide = 10000.0;  // 100 km^2

inline Zone zone_from_km2(double km2) {
  if (!(km2 > 0.0) || !std::isfinite(km2)) {
    throw ConfigError("zone area must be positive, got " + std::to_string(km2));
  }
  return Zone{std::sqrt(km2) * 1000.0};
}

struct World {
  Zone zone;
  std::vector<Point> drivers;
  std::vector<Point> adversaries;
};

struct ScenarioParams {
  std::size_t drivers = 25;
  std::size_t adversaries = 12;
  double rho = 0.0;  // perturbation radius, meters
  double tau = 0.0;  // noisy-attack clustering threshold, meters
  std::uint64_t seed = 0;
  // Round every simulated location to whole meters, as an integer
  // coordinate encoding would.
  bool snap_to_integer = false;
};

// One adversary's view after a protocol round: n radii in random order.
// Position j carries no driver identity.
struct DistanceList {
  std::size_t adversary_index = 0;
  std::vector<double> radii;
};

inline Point snap(Point p) { return {std::round(p.x), std::round(p.y)}; }

// n i.i.d. uniform points strictly inside the zone.
inline std::vector<Point> place_drivers(const Zone& zone, std::size_t n, Rng& rng) {
  std::vector<Point> drivers;
  drivers.reserve(n);
  while (drivers.size() < n) {
    const Point p{zone.side * uniform01(rng), zone.side * uniform01(rng)};
    if (zone.strictly_contains(p)) drivers.push_back(p);
  }
  return drivers;
}

struct AdversaryLayout {
  // Ring radius as a fraction of the zone side; below 0.5 keeps the ring
  // inside the zone.
  double ring_fraction = 0.35;
};

// Deterministic layout: m points evenly spaced by angle on a ring about the
// zone center. The returned order puts the pivot pairs first: A1 at angle 0,
// A2 nearest 90 degrees, then A3 and A4 nearest 45 and 135 degrees, then the
// remaining ring points by increasing angle.
inline std::vector<Point> place_adversaries(const Zone& zone, std::size_t m,
                                            const AdversaryLayout& layout = {}) {
  if (m < 4) {
    throw ConfigError("at least 4 adversaries are required, got " + std::to_string(m));
  }
  if (!(layout.ring_fraction > 0.0 && layout.ring_fraction < 0.5)) {
    throw ConfigError("adversary ring must lie strictly inside the zone");
  }
  const double step = 360.0 / static_cast<double>(m);
  std::vector<bool> used(m, false);
  std::vector<std::size_t> order;
  order.reserve(m);
  auto take_nearest = [&](double target_deg) {
    std::size_t best = m;
    double best_gap = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (used[k]) continue;
      const double gap = std::abs(std::remainder(step * static_cast<double>(k) - target_deg, 360.0));
      if (best == m || gap < best_gap - 1e-9) {
        best = k;
        best_gap = gap;
      }
    }
    used[best] = true;
    order.push_back(best);
  };
  take_nearest(0.0);
  take_nearest(90.0);
  take_nearest(45.0);
  take_nearest(135.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (!used[k]) order.push_back(k);
  }

  const Point c = zone.center();
  const double r = layout.ring_fraction * zone.side;
  std::vector<Point> out;
  out.reserve(m);
  for (std::size_t k : order) {
    const double theta = step * static_cast<double>(k) * std::numbers::pi / 180.0;
    out.push_back({c.x + r * std::cos(theta), c.y + r * std::sin(theta)});
  }
  return out;
}

// Uniform point in the closed disk of radius rho about p.
inline Point anonymize(Point p, double rho, Rng& rng) {
  const double r = rho * std::sqrt(uniform01(rng));
  const double theta = 2.0 * std::numbers::pi * uniform01(rng);
  if (rho == 0.0) return p;
  return {p.x + r * std::cos(theta), p.y + r * std::sin(theta)};
}

// One protocol round as seen by adversary `adversary_index`: every driver
// reports a fresh anonymized location, the provider computes squared
// distances and permutes them, and the adversary takes square roots.
inline DistanceList sp_round(const World& world, std::size_t adversary_index, double rho,
                             Rng& rng, bool snap_to_integer = false) {
  if (adversary_index >= world.adversaries.size()) {
    throw ConfigError("adversary index out of range");
  }
  const Point rider = world.adversaries[adversary_index];
  std::vector<double> squared;
  squared.reserve(world.drivers.size());
  for (const Point& driver : world.drivers) {
    Point reported = anonymize(driver, rho, rng);
    if (snap_to_integer) reported = snap(reported);
    squared.push_back(dist_squared(reported, rider));
  }
  shuffle(std::span<double>(squared), rng);

  DistanceList list{adversary_index, {}};
  list.radii.reserve(squared.size());
  for (double s : squared) list.radii.push_back(std::sqrt(s));
  return list;
}

inline double min_pairwise_distance(const std::vector<Point>& points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, dist(points[i], points[j]));
    }
  }
  return best;
}

inline void validate_world(const World& world, double min_adversary_separation = 0.0) {
  if (!(world.zone.side > 0.0)) throw ConfigError("zone side must be positive");
  for (const Point& d : world.drivers) {
    if (!world.zone.strictly_contains(d)) throw ConfigError("driver outside zone");
  }
  for (const Point& a : world.adversaries) {
    if (!world.zone.contains(a)) throw ConfigError("adversary outside zone");
  }
  if (world.adversaries.size() >= 2 &&
      min_pairwise_distance(world.adversaries) < min_adversary_separation) {
    throw ConfigError("adversaries closer than the configured minimum separation");
  }
}

// Builds trial `trial` of a scenario: drivers from the trial's driver stream
// and the deterministic adversary ring.
inline World make_world(const Zone& zone, const ScenarioParams& params, std::uint64_t trial,
                        const AdversaryLayout& layout = {}) {
  if (params.drivers < 1) throw ConfigError("at least one driver is required");
  Rng rng = make_rng(params.seed, trial, kDriverStream);
  World world{zone, place_drivers(zone, params.drivers, rng),
              place_adversaries(zone, params.adversaries, layout)};
  if (params.snap_to_integer) {
    for (Point& p : world.drivers) p = snap(p);
    for (Point& p : world.adversaries) p = snap(p);
  }
  return world;
}

// All adversaries' distance lists for one trial; adversary k draws from its
// own substream so lists are reproducible independently.
inline std::vector<DistanceList> sp_round_all(const World& world, const ScenarioParams& params,
                                              std::uint64_t trial) {
  std::vector<DistanceList> lists;
  lists.reserve(world.adversaries.size());
  for (std::size_t k = 0; k < world.adversaries.size(); ++k) {
    Rng rng = make_rng(params.seed, trial, k);
    lists.push_back(sp_round(world, k, params.rho, rng, params.snap_to_integer));
  }
  return lists;
}

}  // namespace oride

#endif  // ORIDE_SIMWORLD_HPP_

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

#include "oride/attack_noisy.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oride/attack_exact.hpp"
#include "oride/eval.hpp"
#include "oride/simworld.hpp"

namespace oride {
namespace {

AdversaryView view(Point at, std::vector<double> radii, std::size_t index = 0) {
  return {at, {index, std::move(radii)}};
}

std::vector<AdversaryView> noisy_views(const World& world, double rho, std::uint64_t seed,
                                       std::uint64_t trial) {
  ScenarioParams params;
  params.rho = rho;
  params.seed = seed;
  return make_views(world, sp_round_all(world, params, trial));
}

// Brute-force references for the grid-backed steps.
CandidateSet nearby_reference(const CandidateSet& in, double tau, NearbyFilter mode) {
  CandidateSet out;
  const auto& pts = in.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (mode == NearbyFilter::kDedup) {
      bool near = false;
      for (const Point& q : out.points) near = near || dist(pts[i], q) <= tau;
      if (!near) out.points.push_back(pts[i]);
      continue;
    }
    bool later = false;
    for (std::size_t j = i + 1; j < pts.size(); ++j) later = later || dist(pts[i], pts[j]) <= tau;
    if (later && std::find(out.points.begin(), out.points.end(), pts[i]) == out.points.end()) {
      out.points.push_back(pts[i]);
    }
  }
  return out;
}

CandidateSet select_reference(const CandidateSet& first, const CandidateSet& second, double tau) {
  CandidateSet out;
  for (const Point& p : first.points) {
    bool matched = false;
    for (const Point& q : second.points) {
      const double d = dist(p, q);
      matched = matched || (d > kGeomEpsilon && d <= tau);
    }
    if (matched && std::find(out.points.begin(), out.points.end(), p) == out.points.end()) {
      out.points.push_back(p);
    }
  }
  return out;
}

TEST(SuperfluousFilterTest, Examples) {
  const CandidateSet in{{{0, 0}, {100, 0}, {450, 0}, {1000, 0}}};
  // Circle of radius 500 about (0,0); probes have radius 100.
  const CandidateSet out = filter_out_superfluous_points(view({0, 0}, {500}), in, 50);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.points[0], (Point{450, 0}));
  // (0,0) and (100,0): probe inside the circle. (1000,0): probe outside.
  EXPECT_TRUE(filter_out_superfluous_points(view({0, 0}, {500}), CandidateSet{}, 50).empty());
}

TEST(SuperfluousFilterTest, TangencyAtTwoRhoIsKept) {
  // Candidate 600 m away, probe radius 100, circle radius 500: internal
  // tangency. Radius 700 gives external tangency.
  const CandidateSet in{{{600, 0}}};
  EXPECT_EQ(filter_out_superfluous_points(view({0, 0}, {500}), in, 50).size(), 1u);
  EXPECT_EQ(filter_out_superfluous_points(view({0, 0}, {700}), in, 50).size(), 1u);
  EXPECT_TRUE(filter_out_superfluous_points(view({0, 0}, {499}), in, 50).empty());
  EXPECT_TRUE(filter_out_superfluous_points(view({0, 0}, {701}), in, 50).empty());
}

TEST(SuperfluousFilterTest, KeepsEveryTrueDriver) {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    ScenarioParams params;
    params.drivers = 40;
    params.seed = 12;
    const World world = make_world(Zone{10000}, params, trial);
    const auto views = noisy_views(world, 50, 12, trial);
    const CandidateSet truth{world.drivers};
    for (const auto& v : views) {
      EXPECT_EQ(filter_out_superfluous_points(v, truth, 50).size(), truth.size());
    }
  }
}

TEST(NearbyFilterTest, Examples) {
  const CandidateSet pair{{{0, 0}, {50, 0}}};
  const CandidateSet apart{{{0, 0}, {500, 0}}};
  EXPECT_EQ(filter_out_nearby_invalid_points(pair, 100, NearbyFilter::kDedup).points,
            (std::vector<Point>{{0, 0}}));
  EXPECT_EQ(filter_out_nearby_invalid_points(pair, 100, NearbyFilter::kPseudocode).points,
            (std::vector<Point>{{0, 0}}));
  EXPECT_EQ(filter_out_nearby_invalid_points(apart, 100, NearbyFilter::kDedup).size(), 2u);
  EXPECT_TRUE(filter_out_nearby_invalid_points(apart, 100, NearbyFilter::kPseudocode).empty());
  EXPECT_TRUE(filter_out_nearby_invalid_points(CandidateSet{}, 100).empty());
}

TEST(NearbyFilterTest, GroupOfThree) {
  const CandidateSet chain{{{0, 0}, {80, 0}, {160, 0}}};
  // Dedup: (160,0) is 160 m from the only kept point.
  EXPECT_EQ(filter_out_nearby_invalid_points(chain, 100, NearbyFilter::kDedup).points,
            (std::vector<Point>{{0, 0}, {160, 0}}));
  EXPECT_EQ(filter_out_nearby_invalid_points(chain, 100, NearbyFilter::kPseudocode).points,
            (std::vector<Point>{{0, 0}, {80, 0}}));
}

TEST(NearbyFilterTest, GridMatchesBruteForce) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> coord(0, 2000);
  for (int rep = 0; rep < 50; ++rep) {
    CandidateSet in;
    for (int i = 0; i < 300; ++i) in.points.push_back({coord(gen), coord(gen)});
    // Exact duplicates exercise the uniqueness rule.
    for (int i = 0; i < 20; ++i) in.points.push_back(in.points[i * 7]);
    for (double tau : {25.0, 75.0, 150.0}) {
      for (NearbyFilter mode : {NearbyFilter::kDedup, NearbyFilter::kPseudocode}) {
        EXPECT_EQ(filter_out_nearby_invalid_points(in, tau, mode).points,
                  nearby_reference(in, tau, mode).points);
      }
    }
  }
}

TEST(SelectTest, Examples) {
  const CandidateSet first{{{0, 0}, {1000, 0}, {2000, 0}}};
  const CandidateSet second{{{30, 40}, {2000, 0}, {1500, 0}}};
  // (0,0) matches at 50 m; (2000,0) coincides exactly and is skipped.
  EXPECT_EQ(select_likely_points(first, second, 100).points, (std::vector<Point>{{0, 0}}));
  EXPECT_TRUE(select_likely_points(first, CandidateSet{}, 100).empty());
  EXPECT_TRUE(select_likely_points(CandidateSet{}, second, 100).empty());
}

TEST(SelectTest, GridMatchesBruteForce) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> coord(0, 3000);
  for (int rep = 0; rep < 50; ++rep) {
    CandidateSet a, b;
    for (int i = 0; i < 200; ++i) a.points.push_back({coord(gen), coord(gen)});
    for (int i = 0; i < 200; ++i) b.points.push_back({coord(gen), coord(gen)});
    b.points.push_back(a.points[0]);
    a.points.push_back(a.points[1]);
    for (double tau : {50.0, 100.0}) {
      EXPECT_EQ(select_likely_points(a, b, tau).points, select_reference(a, b, tau).points);
    }
  }
}

TEST(RunNoisyTest, ConfigErrors) {
  std::vector<AdversaryView> three = {view({0, 0}, {1}), view({1, 0}, {1}), view({0, 1}, {1})};
  EXPECT_THROW(run_noisy_attack(three, {}), ConfigError);
  std::vector<AdversaryView> four = three;
  four.push_back(view({1, 1}, {1}));
  EXPECT_THROW(run_noisy_attack(four, {0.0, 100.0}), ConfigError);
  EXPECT_THROW(run_noisy_attack(four, {50.0, 0.0}), ConfigError);
  EXPECT_NO_THROW(run_noisy_attack(four, {50.0, 100.0}));
}

TEST(RunNoisyTest, TraceInvariants) {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    ScenarioParams params;
    params.drivers = 25;
    params.seed = 44;
    const World world = make_world(Zone{10000}, params, trial);
    const auto views = noisy_views(world, 50, 44, trial);
    const NoisyAttackConfig config{50, 100, NearbyFilter::kDedup};
    const NoisyAttackTrace t = run_noisy_attack_traced(views, config);
    EXPECT_LE(t.first_intersections.size(), 2 * 25 * 25u);
    EXPECT_LE(t.first_filtered.size(), t.first_intersections.size());
    EXPECT_LE(t.second_filtered.size(), t.second_intersections.size());
    EXPECT_LE(t.first_thinned.size(), t.first_filtered.size());
    EXPECT_LE(t.output.size(), t.first_thinned.size());
    EXPECT_TRUE(std::is_sorted(t.output.points.begin(), t.output.points.end()));
    // Thinned lists have no two points within tau.
    for (std::size_t i = 0; i < t.first_thinned.size(); ++i) {
      for (std::size_t j = i + 1; j < t.first_thinned.size(); ++j) {
        EXPECT_GT(dist(t.first_thinned.points[i], t.first_thinned.points[j]), config.tau);
      }
    }
    for (const Point& p : t.output.points) {
      EXPECT_NE(std::find(t.first_thinned.points.begin(), t.first_thinned.points.end(), p),
                t.first_thinned.points.end());
    }
    EXPECT_EQ(run_noisy_attack(views, config).points, t.output.points);
  }
}

// A driver collinear with A1 and A2, close to the segment, is missed by the
// first pivot pair when the perturbed circles fail to meet, and found by
// the second pair, which sees it from a different angle.
TEST(RunNoisyTest, CollinearDriverComesFromSecondPair) {
  const Zone zone{10000};
  const auto adv = place_adversaries(zone, 12);
  // A1 at angle 0, A2 at 90 degrees; a point on the chord between them.
  const Point driver = adv[0] + 0.5 * (adv[1] - adv[0]);
  std::vector<AdversaryView> views;
  for (std::size_t k = 0; k < adv.size(); ++k) views.push_back(view(adv[k], {dist(driver, adv[k])}, k));
  // Shrink both pivot radii so the circles miss each other by 2 m.
  views[0].distances.radii[0] -= 1.0;
  views[1].distances.radii[0] -= 1.0;
  const NoisyAttackTrace t = run_noisy_attack_traced(views, {50, 100, NearbyFilter::kDedup});
  EXPECT_TRUE(t.first_intersections.empty());
  ASSERT_FALSE(t.second_intersections.empty());
  bool near_driver = false;
  for (const Point& p : t.second_filtered.points) near_driver = near_driver || dist(p, driver) <= 1.0;
  EXPECT_TRUE(near_driver);
}

// With a tiny perturbation the noisy attack returns (nearly) the drivers
// that the exact attack recovers.
TEST(RunNoisyTest, SmallRhoApproachesExact) {
  ScenarioParams params;
  params.drivers = 10;
  params.seed = 8;
  const World world = make_world(Zone{10000}, params, 0);
  const auto views = noisy_views(world, 0.01, 8, 0);
  const CandidateSet out = run_noisy_attack(views, {0.01, 0.02, NearbyFilter::kDedup});
  const TrialReport report = validate(out, world.drivers, 0.01);
  EXPECT_GE(report.valid, 8u);
  EXPECT_LE(out.size(), 12u);
}

TEST(RunNoisyTest, CorrectOutputsWithinTwoRho) {
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    ScenarioParams params;
    params.drivers = 25;
    params.seed = 3;
    const World world = make_world(Zone{10000}, params, trial);
    const auto views = noisy_views(world, 50, 3, trial);
    const CandidateSet out = run_noisy_attack(views, {50, 100, NearbyFilter::kDedup});
    const TrialReport report = validate(out, world.drivers, 50);
    EXPECT_GT(report.valid, 0u);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (report.matched_driver[i] >= 0) {
        EXPECT_LE(dist(out.points[i], world.drivers[report.matched_driver[i]]), 100.0);
      }
    }
  }
}

}  // namespace
}  // namespace oride

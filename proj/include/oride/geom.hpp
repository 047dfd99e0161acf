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

#ifndef ORIDE_GEOM_HPP_
#define ORIDE_GEOM_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oride {

// Default on-circle residual, in meters.
inline constexpr double kGeomEpsilon = 1e-6;

// Planar location in meters (x east, y north).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

struct Circle {
  Point center;
  double radius = 0.0;
};

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool is_valid(const Circle& c) {
  return is_finite(c.center) && std::isfinite(c.radius) && c.radius >= 0.0;
}

inline double dist(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline double dist_squared(Point p, Point q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return dx * dx + dy * dy;
}

// Thrown when two circles coincide and therefore share every point.
class DegenerateIntersection : public std::domain_error {
 public:
  DegenerateIntersection()
      : std::domain_error("degenerate: infinite intersections") {}
};

// Result of intersecting two circles: zero, one or two points, sorted
// lexicographically by (x, y).
class Intersection {
 public:
  Intersection() = default;
  explicit Intersection(Point p) : points_{p, Point{}}, size_(1) {}
  Intersection(Point p, Point q) : points_{std::min(p, q), std::max(p, q)}, size_(2) {}

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Point* begin() const { return points_.data(); }
  const Point* end() const { return points_.data() + size_; }

 private:
  std::array<Point, 2> points_{};
  std::size_t size_ = 0;
};

// How two circles relate; `kTangent` covers both internal and external
// tangency within the given tolerance.
enum class CircleRelation {
  kIdentical,
  kConcentric,
  kSeparate,
  kContained,
  kTangent,
  kCrossing,
};

// Squared half-length of the common chord of two circles d apart, in
// factored form so that near-tangent pairs keep their precision. Negative
// when the circles do not meet.
inline double half_chord_squared(double d, double r1, double r2) {
  const double sum = r1 + r2;
  const double diff = std::abs(r1 - r2);
  return (sum - d) * (sum + d) * (d - diff) * (d + diff) / (4.0 * d * d);
}

// Classification from the center distance alone. A pair within eps of
// tangency is tangent unless its two roots are more than 2 eps apart.
inline CircleRelation classify_at_distance(double d, double r1, double r2,
                                           double eps = kGeomEpsilon) {
  const double sum = r1 + r2;
  const double diff = std::abs(r1 - r2);
  if (d <= eps) {
    return diff <= eps ? CircleRelation::kIdentical : CircleRelation::kConcentric;
  }
  if (std::abs(d - sum) <= eps || std::abs(d - diff) <= eps) {
    if (d < sum && d > diff && half_chord_squared(d, r1, r2) > eps * eps) {
      return CircleRelation::kCrossing;
    }
    return CircleRelation::kTangent;
  }
  if (d > sum) return CircleRelation::kSeparate;
  if (d < diff) return CircleRelation::kContained;
  return CircleRelation::kCrossing;
}

inline CircleRelation classify(const Circle& c1, const Circle& c2,
                               double eps = kGeomEpsilon) {
  return classify_at_distance(dist(c1.center, c2.center), c1.radius, c2.radius, eps);
}

// True when circle_intersection would return at least one point (tangency
// included). Coincident circles yield no usable point and report false.
inline bool circles_intersect(const Circle& c1, const Circle& c2,
                              double eps = kGeomEpsilon) {
  const CircleRelation r = classify(c1, c2, eps);
  return r == CircleRelation::kTangent || r == CircleRelation::kCrossing;
}

// Intersection points of two circles. Tangent pairs, and near-tangent pairs
// whose roots lie within 2 eps of each other, yield the single midpoint. Throws DegenerateIntersection for
// coincident circles.
inline Intersection circle_intersection(const Circle& c1, const Circle& c2,
                                        double eps = kGeomEpsilon) {
  const CircleRelation relation = classify(c1, c2, eps);
  switch (relation) {
    case CircleRelation::kIdentical:
      throw DegenerateIntersection();
    case CircleRelation::kConcentric:
    case CircleRelation::kSeparate:
    case CircleRelation::kContained:
      return {};
    case CircleRelation::kTangent:
    case CircleRelation::kCrossing:
      break;
  }

  const Point delta = c2.center - c1.center;
  const double d = std::hypot(delta.x, delta.y);
  const Point u{delta.x / d, delta.y / d};
  // Signed distance from c1 to the radical line along u.
  const double along =
      (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
  const Point foot = c1.center + along * u;
  if (relation == CircleRelation::kTangent) return Intersection(foot);

  const double h2 = half_chord_squared(d, c1.radius, c2.radius);
  const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
  const Point normal{-u.y, u.x};
  return Intersection(foot + h * normal, foot - h * normal);
}

inline bool point_on_circle(Point p, const Circle& c, double eps = kGeomEpsilon) {
  return std::abs(dist(p, c.center) - c.radius) <= eps;
}

}  // namespace oride

#endif  // ORIDE_GEOM_HPP_

// Copyright 2026 The poncelet-grid Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

namespace poncelet {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
  friend Point2 operator-(Point2 a) { return {-a.x1, -a.x2}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
  friend Point2 operator*(Point2 a, double s) { return {s * a.x1, s * a.x2}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double cross(Point2 a, Point2 b) { return a.x1 * b.x2 - a.x2 * b.x1; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 normalized(Point2 a) { return (1.0 / norm(a)) * a; }
inline bool is_finite(Point2 a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

}  // namespace poncelet

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

#include <span>
#include <vector>

#include "poncelet/conics.hpp"

namespace poncelet {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double a);
/// Signed difference a - b wrapped into (-pi, pi].
double angle_difference(double a, double b);

/// Oriented line {q : q . (cos phi, sin phi) = p}, travelling in direction
/// phi + pi/2. Positive p means counterclockwise circulation about the origin.
struct OrientedLine {
  double phi = 0.0;
  double p = 0.0;

  Point2 normal() const;
  Point2 direction() const;
  /// Foot of the perpendicular from the origin.
  Point2 foot() const;
  OrientedLine reversed() const;

  static OrientedLine through(Point2 point, Point2 direction);
};

/// max(|d phi|, |d p| / length_scale), the distance used for closure defects.
double line_distance(const OrientedLine& a, const OrientedLine& b, double length_scale);
/// Intersection of two non-parallel lines. Throws DegenerateError when parallel.
Point2 intersect(const OrientedLine& a, const OrientedLine& b);
/// Mirror image of a point in a line.
Point2 reflect_point(Point2 q, const OrientedLine& line);

/// h(phi) = sqrt((a1^2+lambda) cos^2 phi + (a2^2+lambda) sin^2 phi).
double support_function(const ConfocalConic& ellipse, double phi);
OrientedLine tangent_line(const ConfocalConic& ellipse, double phi);
/// The point where tangent_line(ellipse, phi) touches the ellipse.
Point2 tangency_point(const ConfocalConic& ellipse, double phi);

/// The parameter of the confocal member tangent to the line:
/// p^2 - a1^2 cos^2 phi - a2^2 sin^2 phi.
double caustic_parameter(const ConfocalFamily& family, const OrientedLine& line);

struct Chord {
  OrientedLine line;
  Point2 entry;
  Point2 exit;
};

/// Cuts the line with the elliptic table. Throws DomainError when the line
/// misses or touches it.
Chord chord(const OrientedLine& line, const ConfocalConic& boundary);
/// One step of the billiard ball map.
OrientedLine reflect(const OrientedLine& line, const ConfocalConic& boundary);

/// Determinant of the derivative of reflect in the (phi, p) chart, by central
/// differences with angle step `step` and length step `step * a1`.
double jacobian_det(const OrientedLine& line, const ConfocalConic& boundary, double step = 1e-5);

/// | |F1' F2| - |F1 F2'| | where F1' mirrors F1 in the first chord and F2'
/// mirrors F2 in the second. Vanishes when the second chord is the
/// reflection of the first.
double focal_mirror_gap(const Chord& first, const Chord& second, const ConfocalFamily& family);

struct PortraitSample {
  double phi;
  double p;
};

struct PortraitCurve {
  double lambda;
  /// Lines of the upper (p > 0) and lower (p < 0) branches that meet the table.
  std::vector<PortraitSample> upper;
  std::vector<PortraitSample> lower;
};

/// Invariant curves p^2 = a1^2 cos^2 + a2^2 sin^2 + lambda of the billiard in
/// the member lambda_table, sampled at `samples` equispaced angles.
std::vector<PortraitCurve> phase_portrait(const ConfocalFamily& family, double lambda_table,
                                          std::span<const double> lambdas, int samples);

}  // namespace poncelet

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

#include <algorithm>
#include <vector>

#include "poncelet/canonical.hpp"
#include "poncelet/conics.hpp"
#include "poncelet/linespace.hpp"

namespace poncelet {

/// A closed billiard trajectory with n sides and winding k in a confocal
/// table. Side i is tangent to the caustic at chart value x0 + i/n, and the
/// ball travels from side i to side i + k, so vertex i = the meeting point of sides i and i+k.
struct PonceletPolygon {
  ConfocalFamily family;
  double lambda_caustic;
  double lambda_table;
  int n;
  int k;
  double x0;
  std::vector<double> tangency_x;
  std::vector<OrientedLine> side_lines;
  std::vector<Point2> vertices;
};

/// Finds the caustic with rotation number k/n and lays out the polygon.
/// Throws DomainError for even n or gcd(k, n) != 1, and Error when the
/// vertices miss the table (|evaluate_confocal| above 1e-8).
PonceletPolygon build_polygon(const ConfocalFamily& family, double lambda_table, int n, int k, double x0,
                              int resolution = 4096);
/// Same, on an existing chart of the caustic.
PonceletPolygon build_polygon(const CanonicalChart& chart, double lambda_table, int n, int k, double x0);

enum class SetKind { P, Q };

/// Meeting point of sides i and j; i == j is the tangency point of side i.
struct GridPoint {
  Point2 point;
  int i;
  int j;
  /// The two sides are parallel to roundoff or meet beyond 1e6 a1. Such
  /// points are kept for counting and skipped by fits.
  bool at_infinity = false;
};

/// P_m = {side i meets side i+m}, m = 0..(n-1)/2 (P_0 are the tangency points);
/// Q_s = {side i meets side j : i + j = s mod n}.
struct GridSet {
  SetKind kind;
  int index;
  int n;
  double x0;
  std::vector<GridPoint> points;

  /// The finite points.
  std::vector<Point2> finite_points() const;
};

/// P sets first in index order, then Q sets.
std::vector<GridSet> grid_sets(const PonceletPolygon& poly);

struct FittedConic {
  GeneralConic conic;
  /// Smallest over largest singular value of the normalized design matrix.
  double residual;
};

/// Least-squares conic through at least five points, from the smallest
/// singular vector of the [x^2, xy, y^2, x, y, 1] design matrix after
/// isotropic normalization. Throws DomainError for fewer than five points and
/// DegenerateError when the points do not determine a conic (collinear).
FittedConic fit_conic(const std::vector<Point2>& points);

/// Adds the mirror images in both coordinate axes.
std::vector<Point2> symmetry_complete(const std::vector<Point2>& points);

/// Fits the finite points of a grid set. Sets with fewer than five points are
/// completed by the axial symmetries first. A set lying on a coordinate axis
/// gets the double line of that axis, which is the degenerate member of the
/// family there.
FittedConic fit_grid_set(const GridSet& set, const ConfocalFamily& family);

struct Confocality {
  /// |(s1 - s2) - (a1^2 - a2^2)| / a1^2 for the axis form x1^2/s1 + x2^2/s2 = 1.
  double focal_gap = 0.0;
  /// Largest of the cross and linear coefficients relative to the largest
  /// quadratic one.
  double misalignment = 0.0;
  /// sigma3 / sigma1 for the dual conic stacked with two member duals.
  double pencil_ratio = 0.0;
  /// Family parameter read from the axis form.
  double lambda = 0.0;
  bool hyperbola = false;
  /// The fit is one of the degenerate members (a coordinate axis).
  bool degenerate_member = false;

  double value() const { return std::max(focal_gap, misalignment); }
};

Confocality confocality_residual(const ConfocalFamily& family, const FittedConic& fc);

/// Maps set_a onto set_b by S * A_{lambda, mu}, the Ivory affinity between
/// their confocal conics composed with a sign matrix S, and returns the
/// symmetric Hausdorff distance between the image and set_b. For P sets
/// S = (-1)^{a - b} I. For Q sets the same global sign applies, and S also
/// flips the x1 axis when the two hyperbola arcs sit in different quadrant
/// pairs. Throws DomainError on mismatched kinds or sizes.
double equivalence_gap(const ConfocalFamily& family, const GridSet& set_a, const GridSet& set_b);

/// The sign matrix used by equivalence_gap, as diagonal entries.
Point2 equivalence_signs(const GridSet& set_a, const GridSet& set_b);

struct GridCoordinate {
  SetKind kind;
  int index;
  int j;
  Point2 point;
  /// Mid and half difference of the chart values of the two tangency points.
  double x;
  double y;
};

/// Chart coordinates (x, y) of every distinct grid point (one per P set
/// member), recovered from the two tangent lines through it. y is in [0, 1/4).
std::vector<GridCoordinate> grid_xy_coords(const PonceletPolygon& poly, const CanonicalChart& chart);

/// Normal angle of the tangent line at the point of the ellipse with
/// eccentric anomaly t.
double normal_angle_at(const ConfocalConic& ellipse, double t);

/// Samples the confocal hyperbola lambda inside the box |x1| <= w, |x2| <= h
/// and returns the smallest first-order distance to `other`, or 0 when the
/// samples fall on both sides of it.
double sampled_separation(const ConfocalFamily& family, double lambda, const GeneralConic& other, double w,
                          double h, int samples = 400);

}  // namespace poncelet

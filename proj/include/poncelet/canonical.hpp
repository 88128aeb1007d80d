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
#include "poncelet/linespace.hpp"

namespace poncelet {

/// Cyclic coordinate x in [0, 1) on an elliptic caustic in which every
/// billiard map of a confocal table is a rotation x -> x + c.
///
/// A point of the caustic is named by the normal angle phi of its tangent
/// line. The invariant curve of the caustic lambda in line space is
/// p = h_lambda(phi), so the area between it and the neighbouring curve
/// lambda + eps is eps * Int dphi / (2 h_lambda(phi)) to first order. The chart
/// integrates that density and normalizes the total to 1, with x(0) = 0.
///
/// The density peaks like 1 / sqrt(a2^2 + lambda) near phi = pi/2 for thin
/// caustics, so the quadrature runs in v = asinh(tan phi) over one quarter
/// turn, where dphi / h = dv / sqrt(A + B sinh^2 v) is smooth; the other
/// quarters follow from x(pi - phi) = 1/2 - x(phi) and x(phi + pi) = x(phi) + 1/2.
/// Panels are composite 8-point Gauss-Legendre, resolution / 4 per quarter.
class CanonicalChart {
 public:
  CanonicalChart(const ConfocalFamily& family, double lambda_caustic, int resolution);

  const ConfocalConic& caustic() const { return caustic_; }
  int resolution() const { return 4 * quarter_panels_; }
  /// Total unnormalized length Int_0^{2 pi} dphi / (2 h).
  double normalization() const { return 2.0 * quarter_total_; }
  /// dx/dphi.
  double density(double phi) const;
  /// Node angles over the full turn, increasing from 0 to 2 pi.
  std::span<const double> phi_grid() const { return phi_grid_; }
  /// Chart values at phi_grid(), increasing from 0 to 1.
  std::span<const double> x_table() const { return x_table_; }

  /// x(phi) in [0, 1); phi is taken mod 2 pi.
  double eval(double phi) const;
  /// phi(x) in [0, 2 pi); x is taken mod 1.
  double invert(double x) const;

 private:
  double integrand(double v) const;
  double quarter_eval(double phi) const;
  double quarter_invert(double q) const;

  ConfocalConic caustic_;
  int quarter_panels_;
  double v_max_;
  double v_step_;
  double quarter_total_;
  std::vector<double> quarter_table_;
  std::vector<double> phi_grid_;
  std::vector<double> x_table_;
};

CanonicalChart build_chart(const ConfocalFamily& family, double lambda_caustic, int resolution);

/// Wraps into [0, 1).
double wrap_unit(double x);
/// Signed difference a - b wrapped into [-1/2, 1/2).
double unit_difference(double a, double b);

/// Follows the tangent line of the caustic at phi_a, reflects it once in the
/// table and returns the tangency angle of the reflected line.
double map_on_caustic(const ConfocalConic& caustic, const ConfocalConic& table, double phi_a);
double map_on_caustic(const ConfocalFamily& family, double lambda_caustic, double lambda_table, double phi_a);

struct RotationNumber {
  double c = 0.0;
  /// max - min of the per-sample shifts.
  double spread = 0.0;
  double stddev = 0.0;
};

/// Shift of the table's billiard map in the chart, averaged over `starts`
/// equispaced chart positions.
RotationNumber rotation_number(const CanonicalChart& chart, const ConfocalConic& table, int starts = 16);
RotationNumber rotation_number(const ConfocalFamily& family, double lambda_caustic, double lambda_table,
                               int resolution = 4096);

/// Caustic whose trajectories in the table close after n reflections and k
/// turns. Bisection on lambda in (-a2^2, lambda_table).
double find_caustic(const ConfocalFamily& family, double lambda_table, int k, int n, int resolution = 4096);

/// Caustic for which the composition of the billiard maps of all `tables`
/// (in order) has shift j / m.
double find_caustic_composite(const ConfocalFamily& family, std::span<const double> tables, int j, int m,
                              int resolution = 4096);

/// Standard parametrization (sqrt(A) cos t, sqrt(B) sin t).
Point2 ellipse_point(const ConfocalConic& ellipse, double t);
/// Arc length of the standard parametrization between t1 and t2 (signed).
double arc_length(const ConfocalConic& ellipse, double t1, double t2);
double arc_length(const ConfocalFamily& family, double lambda, double t1, double t2);
double perimeter(const ConfocalConic& ellipse);

/// Tangency parameters of the two tangent lines from an exterior point.
struct TangentPair {
  double ta;
  double tb;
  Point2 a;
  Point2 b;
};
TangentPair tangents_from(const ConfocalConic& ellipse, Point2 x);

/// Length of the closed string around the caustic pulled tight at x.
double string_length_at(const ConfocalConic& caustic, Point2 x);
/// string_length_at evaluated at the vertex (sqrt(a1^2 + lambda_table), 0).
double string_length(const ConfocalFamily& family, double lambda_caustic, double lambda_table);

/// Curve traced by a closed string of length L pulled tight around the
/// caustic, one point per ray direction 2 pi i / samples.
std::vector<Point2> string_curve(const ConfocalFamily& family, double lambda_caustic, double length, int samples);

/// Orthogonality defect for the infinitesimal quadrilateral x q x' p built
/// from the two tangent lines to the caustic at x and at a nearby point x'
/// of the table (p on the first tangent from x, q on the second).
/// Returns |cos| of the angle between pq and the table's tangent at x, taken
/// in the limit x' -> x, where p - x and q - x are the components of the
/// tangent vector along the two tangent directions.
/// Only the axes of the two conics are used, so the table may belong to a
/// different family (the gap is then generally nonzero).
double orthogonality_gap(const ConfocalConic& caustic, const ConfocalConic& table, double t);
double orthogonality_gap(const ConfocalFamily& family, double lambda_caustic, double lambda_table, double t);
/// The same quadrilateral built with x' = table point at t + delta.
double orthogonality_gap_finite(const ConfocalConic& caustic, const ConfocalConic& table, double t, double delta);

}  // namespace poncelet

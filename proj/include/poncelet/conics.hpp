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

#include <Eigen/Core>
#include <array>

#include "poncelet/errors.hpp"
#include "poncelet/point.hpp"

namespace poncelet {

/// The confocal family x1^2/(a1^2 + lambda) + x2^2/(a2^2 + lambda) = 1.
///
/// a1_sq == a2_sq is allowed and describes concentric circles. Such a family
/// has no focal segment, so operations that need foci reject it.
class ConfocalFamily {
 public:
  ConfocalFamily(double a1_sq, double a2_sq);

  double a1_sq() const { return a1_sq_; }
  double a2_sq() const { return a2_sq_; }
  /// a1, the length unit used by tolerances.
  double scale() const { return std::sqrt(a1_sq_); }
  bool is_circle() const { return a1_sq_ == a2_sq_; }
  /// Distance from the center to either focus, sqrt(a1^2 - a2^2).
  double focal_distance() const { return std::sqrt(a1_sq_ - a2_sq_); }
  /// Foci at (-c, 0) and (c, 0). Throws DegenerateError for circles.
  std::array<Point2, 2> foci() const;
  /// |lambda + a_i^2| below this is treated as a degenerate member.
  double degeneracy_tolerance() const { return 1e-9 * a1_sq_; }

  friend bool operator==(const ConfocalFamily&, const ConfocalFamily&) = default;

 private:
  double a1_sq_;
  double a2_sq_;
};

enum class ConicKind { Ellipse, Hyperbola };

/// One non-degenerate member of a confocal family.
class ConfocalConic {
 public:
  ConfocalConic(ConfocalFamily family, double lambda);

  const ConfocalFamily& family() const { return family_; }
  double lambda() const { return lambda_; }
  ConicKind kind() const { return kind_; }
  bool is_ellipse() const { return kind_ == ConicKind::Ellipse; }
  /// a1^2 + lambda and a2^2 + lambda; the second is negative for hyperbolas.
  double axis1_sq() const { return family_.a1_sq() + lambda_; }
  double axis2_sq() const { return family_.a2_sq() + lambda_; }

 private:
  ConfocalFamily family_;
  double lambda_;
  ConicKind kind_;
};

/// Elliptic coordinates: lambda1 in [-a1^2, -a2^2] names the confocal
/// hyperbola, lambda2 >= -a2^2 the confocal ellipse through a point.
struct EllipticCoords {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// A conic as a symmetric homogeneous 3x3 matrix, kept at unit Frobenius norm
/// with its first significant entry (row-major) positive, so that two
/// matrices describing the same conic compare equal.
class GeneralConic {
 public:
  explicit GeneralConic(const Eigen::Matrix3d& m);

  /// Conic from coefficients of A x^2 + B xy + C y^2 + D x + E y + F = 0.
  static GeneralConic from_coefficients(const Eigen::Matrix<double, 6, 1>& c);

  const Eigen::Matrix3d& matrix() const { return m_; }
  /// (A, B, C, D, E, F) of A x^2 + B xy + C y^2 + D x + E y + F.
  Eigen::Matrix<double, 6, 1> coefficients() const;
  /// Orthonormal 6-vector of the upper triangle (off-diagonals weighted by
  /// sqrt 2), so that Euclidean distance equals Frobenius distance.
  Eigen::Matrix<double, 6, 1> as_vector() const;
  double evaluate(Point2 p) const;
  Point2 gradient(Point2 p) const;

 private:
  Eigen::Matrix3d m_;
};

/// Frobenius distance between two normalized conics, minimized over the sign.
double conic_distance(const GeneralConic& a, const GeneralConic& b);

double evaluate_confocal(const ConfocalConic& conic, Point2 p);
EllipticCoords elliptic_coords(const ConfocalFamily& family, Point2 p);

struct QuadrantSigns {
  int s1 = 1;
  int s2 = 1;
};
Point2 from_elliptic(const ConfocalFamily& family, EllipticCoords c, QuadrantSigns signs = {});

/// The Ivory affinity Diag(sqrt((a1^2+mu)/(a1^2+lambda)), sqrt((a2^2+mu)/(a2^2+lambda))).
/// mu may be a degenerate member (the affinity then collapses onto an axis);
/// lambda may not.
Point2 ivory_map(const ConfocalFamily& family, double lambda, double mu, Point2 p);

GeneralConic to_general(const ConfocalConic& conic);
/// Dual conic (adjugate matrix).
GeneralConic dual_conic(const GeneralConic& c);

}  // namespace poncelet

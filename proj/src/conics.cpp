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

#include "poncelet/conics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace poncelet {

namespace {

bool finite(double v) { return std::isfinite(v); }

void require_focal_family(const ConfocalFamily& family, const char* op) {
  if (family.a1_sq() - family.a2_sq() <= family.degeneracy_tolerance()) {
    throw DegenerateError(std::string(op) + ": circle family has no elliptic coordinates");
  }
}

}  // namespace

ConfocalFamily::ConfocalFamily(double a1_sq, double a2_sq) : a1_sq_(a1_sq), a2_sq_(a2_sq) {
  if (!finite(a1_sq) || !finite(a2_sq)) {
    throw DomainError("confocal family: non-finite semi-axis");
  }
  if (!(a2_sq > 0.0) || a1_sq < a2_sq) {
    throw DomainError("confocal family: need a1_sq >= a2_sq > 0");
  }
}

std::array<Point2, 2> ConfocalFamily::foci() const {
  if (is_circle()) throw DegenerateError("circle family has coincident foci");
  const double c = focal_distance();
  return {Point2{-c, 0.0}, Point2{c, 0.0}};
}

ConfocalConic::ConfocalConic(ConfocalFamily family, double lambda)
    : family_(family), lambda_(lambda), kind_(ConicKind::Ellipse) {
  const double tol = family_.degeneracy_tolerance();
  if (!finite(lambda)) throw DomainError("confocal conic: non-finite lambda");
  if (lambda + family_.a1_sq() < tol) {
    throw DegenerateError("confocal conic: lambda <= -a1^2 (empty or degenerate member)");
  }
  if (std::abs(lambda + family_.a2_sq()) < tol) {
    throw DegenerateError("confocal conic: lambda at -a2^2 (focal segment)");
  }
  kind_ = lambda + family_.a2_sq() > 0.0 ? ConicKind::Ellipse : ConicKind::Hyperbola;
}

GeneralConic::GeneralConic(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d s = 0.5 * (m + m.transpose());
  const double n = s.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateError("general conic: zero or non-finite matrix");
  s /= n;
  const double cutoff = 1e-12 * s.cwiseAbs().maxCoeff();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (std::abs(s(r, c)) > cutoff) {
        if (s(r, c) < 0.0) s = -s;
        m_ = s;
        return;
      }
    }
  }
  m_ = s;
}

GeneralConic GeneralConic::from_coefficients(const Eigen::Matrix<double, 6, 1>& c) {
  Eigen::Matrix3d m;
  m << c(0), 0.5 * c(1), 0.5 * c(3),
       0.5 * c(1), c(2), 0.5 * c(4),
       0.5 * c(3), 0.5 * c(4), c(5);
  return GeneralConic(m);
}

Eigen::Matrix<double, 6, 1> GeneralConic::coefficients() const {
  Eigen::Matrix<double, 6, 1> c;
  c << m_(0, 0), 2.0 * m_(0, 1), m_(1, 1), 2.0 * m_(0, 2), 2.0 * m_(1, 2), m_(2, 2);
  return c;
}

Eigen::Matrix<double, 6, 1> GeneralConic::as_vector() const {
  const double r2 = std::sqrt(2.0);
  Eigen::Matrix<double, 6, 1> v;
  v << m_(0, 0), m_(1, 1), m_(2, 2), r2 * m_(0, 1), r2 * m_(0, 2), r2 * m_(1, 2);
  return v;
}

double GeneralConic::evaluate(Point2 p) const {
  const Eigen::Vector3d h(p.x1, p.x2, 1.0);
  return h.dot(m_ * h);
}

Point2 GeneralConic::gradient(Point2 p) const {
  const Eigen::Vector3d h(p.x1, p.x2, 1.0);
  const Eigen::Vector3d g = 2.0 * (m_ * h);
  return {g(0), g(1)};
}

double conic_distance(const GeneralConic& a, const GeneralConic& b) {
  return std::min((a.matrix() - b.matrix()).norm(), (a.matrix() + b.matrix()).norm());
}

double evaluate_confocal(const ConfocalConic& conic, Point2 p) {
  return p.x1 * p.x1 / conic.axis1_sq() + p.x2 * p.x2 / conic.axis2_sq() - 1.0;
}

EllipticCoords elliptic_coords(const ConfocalFamily& family, Point2 p) {
  require_focal_family(family, "elliptic_coords");
  if (!is_finite(p)) throw DomainError("elliptic_coords: non-finite point");
  const double a1 = family.a1_sq();
  const double a2 = family.a2_sq();
  const double y1 = p.x1 * p.x1;
  const double y2 = p.x2 * p.x2;
  // lambda^2 + b lambda + c = 0 from clearing denominators in the family equation.
  const double b = a1 + a2 - y1 - y2;
  const double c = a1 * a2 - y1 * a2 - y2 * a1;
  const double disc = std::max(0.0, b * b - 4.0 * c);
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double r1 = q;
  double r2 = q != 0.0 ? c / q : 0.0;
  if (r1 > r2) std::swap(r1, r2);
  EllipticCoords out;
  out.lambda1 = std::clamp(r1, -a1, -a2) + 0.0;
  out.lambda2 = std::max(r2, -a2) + 0.0;
  return out;
}

Point2 from_elliptic(const ConfocalFamily& family, EllipticCoords c, QuadrantSigns signs) {
  require_focal_family(family, "from_elliptic");
  const double a1 = family.a1_sq();
  const double a2 = family.a2_sq();
  const double tol = family.degeneracy_tolerance();
  if (!finite(c.lambda1) || !finite(c.lambda2)) throw DomainError("from_elliptic: non-finite coordinates");
  if (c.lambda1 < -a1 - tol || c.lambda1 > -a2 + tol || c.lambda2 < -a2 - tol || c.lambda1 > c.lambda2 + tol) {
    throw DomainError("from_elliptic: elliptic coordinates out of range");
  }
  const double d = a1 - a2;
  const double s1 = std::max(0.0, (a1 + c.lambda1) * (a1 + c.lambda2) / d);
  const double s2 = std::max(0.0, -(a2 + c.lambda1) * (a2 + c.lambda2) / d);
  return {(signs.s1 < 0 ? -1.0 : 1.0) * std::sqrt(s1), (signs.s2 < 0 ? -1.0 : 1.0) * std::sqrt(s2)};
}

Point2 ivory_map(const ConfocalFamily& family, double lambda, double mu, Point2 p) {
  require_focal_family(family, "ivory_map");
  const double d1l = family.a1_sq() + lambda;
  const double d1m = family.a1_sq() + mu;
  const double d2l = family.a2_sq() + lambda;
  const double d2m = family.a2_sq() + mu;
  if (d1l == 0.0 || d2l == 0.0) throw DegenerateError("ivory_map: degenerate source member");
  if (d1l * d1m < 0.0 || d2l * d2m < 0.0) {
    throw DomainError("ivory_map: lambda and mu must select two ellipses or two hyperbolas");
  }
  return {std::sqrt(d1m / d1l) * p.x1, std::sqrt(d2m / d2l) * p.x2};
}

GeneralConic to_general(const ConfocalConic& conic) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = 1.0 / conic.axis1_sq();
  m(1, 1) = 1.0 / conic.axis2_sq();
  m(2, 2) = -1.0;
  return GeneralConic(m);
}

GeneralConic dual_conic(const GeneralConic& c) {
  const Eigen::Matrix3d& m = c.matrix();
  if (std::abs(m.determinant()) <= 1e-12) throw DegenerateError("dual_conic: singular conic");
  Eigen::Matrix3d adj;
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) {
      const int r1 = (k + 1) % 3, r2 = (k + 2) % 3;
      const int c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      adj(r, k) = m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
    }
  }
  return GeneralConic(adj);
}

}  // namespace poncelet

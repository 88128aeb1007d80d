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

#include "poncelet/linespace.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace poncelet {

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double angle_difference(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

Point2 OrientedLine::normal() const { return {std::cos(phi), std::sin(phi)}; }
Point2 OrientedLine::direction() const { return {-std::sin(phi), std::cos(phi)}; }
Point2 OrientedLine::foot() const { return p * normal(); }
OrientedLine OrientedLine::reversed() const { return {wrap_angle(phi + std::numbers::pi), -p}; }

OrientedLine OrientedLine::through(Point2 point, Point2 direction) {
  const double phi = wrap_angle(std::atan2(direction.x2, direction.x1) - 0.5 * std::numbers::pi);
  const Point2 n{std::cos(phi), std::sin(phi)};
  return {phi, dot(point, n)};
}

double line_distance(const OrientedLine& a, const OrientedLine& b, double length_scale) {
  return std::max(std::abs(angle_difference(a.phi, b.phi)), std::abs(a.p - b.p) / length_scale);
}

Point2 intersect(const OrientedLine& a, const OrientedLine& b) {
  const Point2 na = a.normal();
  const Point2 nb = b.normal();
  const double det = cross(na, nb);
  if (det == 0.0) throw DegenerateError("intersect: parallel lines");
  return {(a.p * nb.x2 - b.p * na.x2) / det, (na.x1 * b.p - nb.x1 * a.p) / det};
}

Point2 reflect_point(Point2 q, const OrientedLine& line) {
  const Point2 n = line.normal();
  return q - 2.0 * (dot(q, n) - line.p) * n;
}

double support_function(const ConfocalConic& ellipse, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return std::sqrt(ellipse.axis1_sq() * c * c + ellipse.axis2_sq() * s * s);
}

OrientedLine tangent_line(const ConfocalConic& ellipse, double phi) {
  if (!ellipse.is_ellipse()) throw DomainError("tangent_line: hyperbola has no support function");
  return {wrap_angle(phi), support_function(ellipse, phi)};
}

Point2 tangency_point(const ConfocalConic& ellipse, double phi) {
  if (!ellipse.is_ellipse()) throw DomainError("tangency_point: hyperbola has no support function");
  const double h = support_function(ellipse, phi);
  return {ellipse.axis1_sq() * std::cos(phi) / h, ellipse.axis2_sq() * std::sin(phi) / h};
}

double caustic_parameter(const ConfocalFamily& family, const OrientedLine& line) {
  const double c = std::cos(line.phi);
  const double s = std::sin(line.phi);
  return line.p * line.p - family.a1_sq() * c * c - family.a2_sq() * s * s;
}

Chord chord(const OrientedLine& line, const ConfocalConic& boundary) {
  if (!boundary.is_ellipse()) throw DomainError("chord: billiard table must be an ellipse");
  const double A = boundary.axis1_sq();
  const double B = boundary.axis2_sq();
  const Point2 d = line.direction();
  const Point2 f = line.foot();
  // |f + t d| on the ellipse: qa t^2 + 2 qb t + qc = 0.
  const double qa = d.x1 * d.x1 / A + d.x2 * d.x2 / B;
  const double qb = f.x1 * d.x1 / A + f.x2 * d.x2 / B;
  const double qc = f.x1 * f.x1 / A + f.x2 * f.x2 / B - 1.0;
  const double disc = qb * qb - qa * qc;
  const double tol = 1e-10 * boundary.family().scale();
  if (!(disc > 0.0)) throw DomainError("chord: line misses the table");
  const double root = std::sqrt(disc);
  const double q = -(qb + std::copysign(root, qb));
  double t0 = q / qa;
  double t1 = q != 0.0 ? qc / q : -t0;
  if (t0 > t1) std::swap(t0, t1);
  if (t1 - t0 <= tol) throw DomainError("chord: line is tangent to the table");
  return {line, f + t0 * d, f + t1 * d};
}

OrientedLine reflect(const OrientedLine& line, const ConfocalConic& boundary) {
  const Chord c = chord(line, boundary);
  const Point2 y = c.exit;
  const Point2 nu = normalized(Point2{y.x1 / boundary.axis1_sq(), y.x2 / boundary.axis2_sq()});
  const Point2 d = line.direction();
  const Point2 out = d - 2.0 * dot(d, nu) * nu;
  return OrientedLine::through(y, out);
}

double jacobian_det(const OrientedLine& line, const ConfocalConic& boundary, double step) {
  const double hp = step * boundary.family().scale();
  const double hphi = step;
  auto at = [&](double dphi, double dp) { return reflect({line.phi + dphi, line.p + dp}, boundary); };
  const OrientedLine fp = at(hphi, 0.0);
  const OrientedLine fm = at(-hphi, 0.0);
  const OrientedLine gp = at(0.0, hp);
  const OrientedLine gm = at(0.0, -hp);
  const double dphi_dphi = angle_difference(fp.phi, fm.phi) / (2.0 * hphi);
  const double dp_dphi = (fp.p - fm.p) / (2.0 * hphi);
  const double dphi_dp = angle_difference(gp.phi, gm.phi) / (2.0 * hp);
  const double dp_dp = (gp.p - gm.p) / (2.0 * hp);
  return dphi_dphi * dp_dp - dphi_dp * dp_dphi;
}

double focal_mirror_gap(const Chord& first, const Chord& second, const ConfocalFamily& family) {
  const auto foci = family.foci();
  const double tol = 1e-9 * family.scale();
  if (distance(first.exit, second.entry) > tol) {
    throw DomainError("focal_mirror_gap: chords do not share an endpoint");
  }
  const Point2 f1m = reflect_point(foci[0], first.line);
  const Point2 f2m = reflect_point(foci[1], second.line);
  return std::abs(distance(f1m, foci[1]) - distance(foci[0], f2m));
}

std::vector<PortraitCurve> phase_portrait(const ConfocalFamily& family, double lambda_table,
                                          std::span<const double> lambdas, int samples) {
  if (samples < 1) throw DomainError("phase_portrait: need at least one sample");
  const ConfocalConic table(family, lambda_table);
  if (!table.is_ellipse()) throw DomainError("phase_portrait: table must be an ellipse");
  std::vector<PortraitCurve> curves;
  curves.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda < lambda_table) || !(lambda > -family.a1_sq())) {
      throw DomainError("phase_portrait: lambda " + std::to_string(lambda) + " outside (-a1^2, lambda_table)");
    }
    PortraitCurve curve{lambda, {}, {}};
    for (int i = 0; i < samples; ++i) {
      const double phi = kTwoPi * i / samples;
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      const double p2 = family.a1_sq() * c * c + family.a2_sq() * s * s + lambda;
      if (p2 < 0.0) continue;
      const double p = std::sqrt(p2);
      if (p > support_function(table, phi)) continue;
      curve.upper.push_back({phi, p});
      curve.lower.push_back({phi, -p});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace poncelet

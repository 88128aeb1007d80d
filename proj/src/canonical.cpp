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

#include "poncelet/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "poncelet/quadrature.hpp"

namespace poncelet {

namespace {

ConfocalConic require_ellipse(const ConfocalFamily& family, double lambda, const char* op) {
  ConfocalConic conic(family, lambda);
  if (!conic.is_ellipse()) throw DomainError(std::string(op) + ": member must be an ellipse");
  return conic;
}

}  // namespace

CanonicalChart::CanonicalChart(const ConfocalFamily& family, double lambda_caustic, int resolution)
    : caustic_(require_ellipse(family, lambda_caustic, "canonical chart")),
      quarter_panels_(0),
      v_max_(0.0),
      v_step_(0.0),
      quarter_total_(0.0) {
  if (resolution < 64) throw DomainError("canonical chart: resolution must be at least 64");
  quarter_panels_ = (resolution + 3) / 4;
  const double A = caustic_.axis1_sq();
  const double B = caustic_.axis2_sq();
  // Beyond sinh v = sqrt(A/B) the integrand decays like exp(-v); e^-45 is below roundoff.
  v_max_ = std::asinh(std::sqrt(A / B)) + 45.0;
  v_step_ = v_max_ / quarter_panels_;
  quarter_table_.assign(static_cast<std::size_t>(quarter_panels_) + 1, 0.0);
  auto f = [this](double v) { return integrand(v); };
  for (int k = 0; k < quarter_panels_; ++k) {
    quarter_table_[k + 1] = quarter_table_[k] + quadrature::gauss8(f, k * v_step_, (k + 1) * v_step_);
  }
  quarter_total_ = quarter_table_.back();

  const std::size_t nq = quarter_table_.size();
  std::vector<double> qphi(nq);
  std::vector<double> qx(nq);
  for (std::size_t k = 0; k < nq; ++k) {
    qphi[k] = std::atan(std::sinh(k * v_step_));
    qx[k] = 0.25 * quarter_table_[k] / quarter_total_;
  }
  qphi.back() = 0.5 * std::numbers::pi;
  qx.back() = 0.25;
  for (int quarter = 0; quarter < 4; ++quarter) {
    for (std::size_t i = 0; i + 1 < nq; ++i) {
      const bool mirrored = quarter % 2 == 1;
      const std::size_t k = mirrored ? nq - 1 - i : i;
      const double base_phi = 0.5 * std::numbers::pi * (quarter - quarter % 2) + (mirrored ? std::numbers::pi : 0.0);
      const double base_x = 0.25 * (quarter - quarter % 2) + (mirrored ? 0.5 : 0.0);
      phi_grid_.push_back(mirrored ? base_phi - qphi[k] : base_phi + qphi[k]);
      x_table_.push_back(mirrored ? base_x - qx[k] : base_x + qx[k]);
    }
  }
  phi_grid_.push_back(kTwoPi);
  x_table_.push_back(1.0);
}

double CanonicalChart::integrand(double v) const {
  const double s = std::sinh(v);
  return 1.0 / std::sqrt(caustic_.axis1_sq() + caustic_.axis2_sq() * s * s);
}

double CanonicalChart::density(double phi) const {
  return 0.5 / support_function(caustic_, phi) / normalization();
}

double CanonicalChart::quarter_eval(double phi) const {
  const double w = 0.5 * std::numbers::pi - phi;
  if (w <= 0.0) return 0.25;
  const double v = phi < 0.25 * std::numbers::pi ? std::asinh(std::tan(phi)) : std::asinh(1.0 / std::tan(w));
  if (v >= v_max_) return 0.25;
  const int k = std::min(static_cast<int>(v / v_step_), quarter_panels_ - 1);
  auto f = [this](double s) { return integrand(s); };
  return 0.25 * (quarter_table_[k] + quadrature::gauss8(f, k * v_step_, v)) / quarter_total_;
}

double CanonicalChart::quarter_invert(double q) const {
  if (q >= 0.25) return 0.5 * std::numbers::pi;
  if (q <= 0.0) return 0.0;
  const double target = 4.0 * q * quarter_total_;
  const auto it = std::upper_bound(quarter_table_.begin(), quarter_table_.end(), target);
  const int k = std::clamp(static_cast<int>(it - quarter_table_.begin()) - 1, 0, quarter_panels_ - 1);
  double lo = k * v_step_;
  double hi = (k + 1) * v_step_;
  const double span = quarter_table_[k + 1] - quarter_table_[k];
  double v = lo + v_step_ * (span > 0.0 ? (target - quarter_table_[k]) / span : 0.5);
  auto f = [this](double s) { return integrand(s); };
  for (int iter = 0; iter < 100; ++iter) {
    const double g = quarter_table_[k] + quadrature::gauss8(f, k * v_step_, v) - target;
    if (g > 0.0) hi = v; else lo = v;
    double next = v - g / integrand(v);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double delta = std::abs(next - v);
    v = next;
    if (delta <= 1e-15 * std::max(1.0, v)) break;
  }
  return std::atan(std::sinh(v));
}

double CanonicalChart::eval(double phi) const {
  double w = wrap_angle(phi);
  double x = 0.0;
  if (w >= std::numbers::pi) {
    w -= std::numbers::pi;
    x = 0.5;
  }
  x += w <= 0.5 * std::numbers::pi ? quarter_eval(w) : 0.5 - quarter_eval(std::numbers::pi - w);
  return wrap_unit(x);
}

double CanonicalChart::invert(double x) const {
  double q = wrap_unit(x);
  double phi = 0.0;
  if (q >= 0.5) {
    q -= 0.5;
    phi = std::numbers::pi;
  }
  phi += q <= 0.25 ? quarter_invert(q) : std::numbers::pi - quarter_invert(0.5 - q);
  return wrap_angle(phi);
}

CanonicalChart build_chart(const ConfocalFamily& family, double lambda_caustic, int resolution) {
  return CanonicalChart(family, lambda_caustic, resolution);
}

double wrap_unit(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w = 0.0;
  return w;
}

double unit_difference(double a, double b) {
  double d = wrap_unit(a - b);
  if (d >= 0.5) d -= 1.0;
  return d;
}

double map_on_caustic(const ConfocalConic& caustic, const ConfocalConic& table, double phi_a) {
  const OrientedLine out = reflect(tangent_line(caustic, phi_a), table);
  if (!(out.p > 0.0)) throw DomainError("map_on_caustic: reflected line reversed its circulation");
  return out.phi;
}

double map_on_caustic(const ConfocalFamily& family, double lambda_caustic, double lambda_table, double phi_a) {
  if (!(lambda_caustic < lambda_table)) throw DomainError("map_on_caustic: caustic must lie inside the table");
  return map_on_caustic(require_ellipse(family, lambda_caustic, "map_on_caustic"),
                        require_ellipse(family, lambda_table, "map_on_caustic"), phi_a);
}

RotationNumber rotation_number(const CanonicalChart& chart, const ConfocalConic& table, int starts) {
  if (starts < 1) throw DomainError("rotation_number: need at least one start");
  std::vector<double> shifts(static_cast<std::size_t>(starts));
  for (int j = 0; j < starts; ++j) {
    const double xa = static_cast<double>(j) / starts;
    const double phi_b = map_on_caustic(chart.caustic(), table, chart.invert(xa));
    shifts[j] = wrap_unit(chart.eval(phi_b) - xa);
  }
  RotationNumber r;
  r.c = std::accumulate(shifts.begin(), shifts.end(), 0.0) / starts;
  const auto [mn, mx] = std::minmax_element(shifts.begin(), shifts.end());
  r.spread = *mx - *mn;
  double ss = 0.0;
  for (double s : shifts) ss += (s - r.c) * (s - r.c);
  r.stddev = starts > 1 ? std::sqrt(ss / (starts - 1)) : 0.0;
  return r;
}

RotationNumber rotation_number(const ConfocalFamily& family, double lambda_caustic, double lambda_table,
                               int resolution) {
  if (!(lambda_caustic < lambda_table)) throw DomainError("rotation_number: caustic must lie inside the table");
  const CanonicalChart chart(family, lambda_caustic, resolution);
  return rotation_number(chart, require_ellipse(family, lambda_table, "rotation_number"));
}

double find_caustic(const ConfocalFamily& family, double lambda_table, int k, int n, int resolution) {
  const double tables[] = {lambda_table};
  return find_caustic_composite(family, tables, k, n, resolution);
}

double find_caustic_composite(const ConfocalFamily& family, std::span<const double> tables, int j, int m,
                              int resolution) {
  if (tables.empty()) throw DomainError("find_caustic: no tables");
  if (m < 2 || j < 1 || std::gcd(j, m) != 1) throw DomainError("find_caustic: need m >= 2, j >= 1, gcd(j, m) = 1");
  if (tables.size() == 1 && 2 * j >= m) throw DomainError("find_caustic: need 2k < n");
  std::vector<ConfocalConic> boundaries;
  for (double t : tables) boundaries.push_back(require_ellipse(family, t, "find_caustic"));
  const double eps = 1e-9 * family.a1_sq();
  const double hi_limit = *std::min_element(tables.begin(), tables.end());
  double lo = -family.a2_sq() + eps;
  while (lo + family.a2_sq() < family.degeneracy_tolerance()) lo = std::nextafter(lo, hi_limit);
  double hi = hi_limit - eps;
  if (!(lo < hi)) throw DomainError("find_caustic: empty caustic range");
  const double target = static_cast<double>(j) / m;

  auto excess = [&](double lambda) {
    const CanonicalChart chart(family, lambda, resolution);
    double c = 0.0;
    for (const auto& b : boundaries) c += rotation_number(chart, b).c;
    return c - target;
  };

  const double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw BracketError("find_caustic: rotation number does not bracket " + std::to_string(j) + "/" +
                           std::to_string(m) + " (excess " + std::to_string(f_lo) + " at the focal end, " +
                           std::to_string(f_hi) + " at the table)",
                       f_lo, f_hi);
  }
  double previous = f_lo;
  constexpr int kProbes = 8;
  for (int i = 1; i <= kProbes; ++i) {
    const double v = excess(lo + (hi - lo) * i / (kProbes + 1));
    if (!(v < previous)) throw Error("find_caustic: rotation number is not decreasing in lambda");
    previous = v;
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * family.a1_sq()) break;
    const double v = excess(mid);
    if (v == 0.0) return mid;
    if (v > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Point2 ellipse_point(const ConfocalConic& ellipse, double t) {
  return {std::sqrt(ellipse.axis1_sq()) * std::cos(t), std::sqrt(ellipse.axis2_sq()) * std::sin(t)};
}

double arc_length(const ConfocalConic& ellipse, double t1, double t2) {
  if (!ellipse.is_ellipse()) throw DomainError("arc_length: member must be an ellipse");
  const double A = ellipse.axis1_sq();
  const double B = ellipse.axis2_sq();
  auto speed = [A, B](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    return std::sqrt(A * s * s + B * c * c);
  };
  const double span = t2 - t1;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(span) / (std::numbers::pi / 8.0))));
  const double tol = 1e-15 * std::sqrt(A);
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += quadrature::adaptive(speed, t1 + span * i / panels, t1 + span * (i + 1) / panels, tol);
  }
  return sum;
}

double arc_length(const ConfocalFamily& family, double lambda, double t1, double t2) {
  return arc_length(ConfocalConic(family, lambda), t1, t2);
}

double perimeter(const ConfocalConic& ellipse) { return arc_length(ellipse, 0.0, kTwoPi); }

TangentPair tangents_from(const ConfocalConic& ellipse, Point2 x) {
  const double ra = std::sqrt(ellipse.axis1_sq());
  const double rb = std::sqrt(ellipse.axis2_sq());
  const double u = x.x1 / ra;
  const double v = x.x2 / rb;
  const double r = std::hypot(u, v);
  if (r < 1.0 - 1e-12) throw DomainError("tangents_from: point inside the ellipse");
  const double theta = std::atan2(v, u);
  const double alpha = std::acos(std::min(1.0, 1.0 / r));
  TangentPair tp{theta - alpha, theta + alpha, {}, {}};
  tp.a = ellipse_point(ellipse, tp.ta);
  tp.b = ellipse_point(ellipse, tp.tb);
  return tp;
}

double string_length_at(const ConfocalConic& caustic, Point2 x) {
  const TangentPair tp = tangents_from(caustic, x);
  const double near_arc = arc_length(caustic, tp.ta, tp.tb);
  return distance(x, tp.a) + distance(x, tp.b) + perimeter(caustic) - near_arc;
}

double string_length(const ConfocalFamily& family, double lambda_caustic, double lambda_table) {
  if (!(lambda_caustic < lambda_table)) throw DomainError("string_length: caustic must lie inside the table");
  const ConfocalConic caustic = require_ellipse(family, lambda_caustic, "string_length");
  return string_length_at(caustic, {std::sqrt(family.a1_sq() + lambda_table), 0.0});
}

std::vector<Point2> string_curve(const ConfocalFamily& family, double lambda_caustic, double length, int samples) {
  if (samples < 1) throw DomainError("string_curve: need at least one sample");
  const ConfocalConic caustic = require_ellipse(family, lambda_caustic, "string_curve");
  const double per = perimeter(caustic);
  if (!(length > per)) throw DomainError("string_curve: string no longer than the caustic perimeter");
  const double A = caustic.axis1_sq();
  const double B = caustic.axis2_sq();
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double theta = kTwoPi * i / samples;
    const Point2 u{std::cos(theta), std::sin(theta)};
    const double r_caustic = 1.0 / std::sqrt(u.x1 * u.x1 / A + u.x2 * u.x2 / B);
    auto residual = [&](double r) { return string_length_at(caustic, r * u) - length; };
    double lo = r_caustic;
    double f_lo = per - length;
    double hi = 2.0 * r_caustic;
    double f_hi = residual(hi);
    while (f_hi <= 0.0) {
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      f_hi = residual(hi);
    }
    // Illinois variant of regula falsi.
    double r = hi;
    int side = 0;
    for (int iter = 0; iter < 200; ++iter) {
      r = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
      const double f = residual(r);
      if (std::abs(f) <= 1e-13 * length || hi - lo <= 1e-14 * hi) break;
      if (f > 0.0) {
        hi = r;
        f_hi = f;
        if (side == 1) f_lo *= 0.5;
        side = 1;
      } else {
        lo = r;
        f_lo = f;
        if (side == -1) f_hi *= 0.5;
        side = -1;
      }
    }
    out.push_back(r * u);
  }
  return out;
}

double orthogonality_gap(const ConfocalConic& caustic, const ConfocalConic& table, double t) {
  const Point2 x = ellipse_point(table, t);
  const Point2 w{-std::sqrt(table.axis1_sq()) * std::sin(t), std::sqrt(table.axis2_sq()) * std::cos(t)};
  const TangentPair tp = tangents_from(caustic, x);
  const Point2 ua = normalized(tp.a - x);
  const Point2 ub = normalized(tp.b - x);
  // w = c1 ua + c2 ub; then p - x = c1 ua and q - x = c2 ub.
  const double det = cross(ua, ub);
  const double c1 = cross(w, ub) / det;
  const double c2 = cross(ua, w) / det;
  const Point2 pq = c2 * ub - c1 * ua;
  return std::abs(dot(pq, w)) / (norm(pq) * norm(w));
}

double orthogonality_gap(const ConfocalFamily& family, double lambda_caustic, double lambda_table, double t) {
  if (!(lambda_caustic < lambda_table)) throw DomainError("orthogonality_gap: caustic must lie inside the table");
  return orthogonality_gap(require_ellipse(family, lambda_caustic, "orthogonality_gap"),
                           require_ellipse(family, lambda_table, "orthogonality_gap"), t);
}

double orthogonality_gap_finite(const ConfocalConic& caustic, const ConfocalConic& table, double t, double delta) {
  const Point2 x = ellipse_point(table, t);
  const Point2 xn = ellipse_point(table, t + delta);
  const TangentPair here = tangents_from(caustic, x);
  const TangentPair there = tangents_from(caustic, xn);
  const OrientedLine la = OrientedLine::through(x, here.a - x);
  const OrientedLine lb = OrientedLine::through(x, here.b - x);
  const OrientedLine la_next = OrientedLine::through(xn, there.a - xn);
  const OrientedLine lb_next = OrientedLine::through(xn, there.b - xn);
  const Point2 p = intersect(la, lb_next);
  const Point2 q = intersect(lb, la_next);
  return std::abs(dot(normalized(q - p), normalized(xn - x)));
}

}  // namespace poncelet

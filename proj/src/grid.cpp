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

#include "poncelet/grid.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace poncelet {

namespace {

void require_polygon_counts(int n, int k) {
  if (n < 3 || n % 2 == 0) throw DomainError("build_polygon: n must be odd and at least 3");
  if (k < 1 || 2 * k >= n || std::gcd(k, n) != 1) {
    throw DomainError("build_polygon: need 1 <= k < n/2 with gcd(k, n) = 1");
  }
}

GridPoint meet(const PonceletPolygon& poly, const ConfocalConic& caustic, int i, int j) {
  if (i == j) return {tangency_point(caustic, poly.side_lines[i].phi), i, j, false};
  const double far = 1e6 * poly.family.scale();
  try {
    const Point2 q = intersect(poly.side_lines[i], poly.side_lines[j]);
    if (is_finite(q) && norm(q) <= far) return {q, i, j, false};
    return {q, i, j, true};
  } catch (const DegenerateError&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {{nan, nan}, i, j, true};
  }
}

double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  auto directed = [](const std::vector<Point2>& from, const std::vector<Point2>& to) {
    double worst = 0.0;
    for (const Point2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point2& q : to) best = std::min(best, distance(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Which pair of opposite quadrants holds the hyperbola arc at chart value u.
bool odd_quadrants(double u) { return std::fmod(wrap_unit(u), 0.5) < 0.25; }

}  // namespace

PonceletPolygon build_polygon(const ConfocalFamily& family, double lambda_table, int n, int k, double x0,
                              int resolution) {
  require_polygon_counts(n, k);
  const double lambda = find_caustic(family, lambda_table, k, n, resolution);
  return build_polygon(CanonicalChart(family, lambda, resolution), lambda_table, n, k, x0);
}

PonceletPolygon build_polygon(const CanonicalChart& chart, double lambda_table, int n, int k, double x0) {
  require_polygon_counts(n, k);
  if (!std::isfinite(x0)) throw DomainError("build_polygon: non-finite x0");
  const ConfocalConic& caustic = chart.caustic();
  const ConfocalConic table(caustic.family(), lambda_table);
  if (!table.is_ellipse() || !(caustic.lambda() < lambda_table)) {
    throw DomainError("build_polygon: table must be an ellipse outside the caustic");
  }
  PonceletPolygon poly{caustic.family(), caustic.lambda(), lambda_table, n, k, wrap_unit(x0), {}, {}, {}};
  for (int i = 0; i < n; ++i) {
    const double x = wrap_unit(poly.x0 + static_cast<double>(i) / n);
    poly.tangency_x.push_back(x);
    poly.side_lines.push_back(tangent_line(caustic, chart.invert(x)));
  }
  for (int i = 0; i < n; ++i) {
    const Point2 v = intersect(poly.side_lines[i], poly.side_lines[(i + k) % n]);
    if (!(std::abs(evaluate_confocal(table, v)) <= 1e-8)) {
      throw Error("build_polygon: vertex " + std::to_string(i) + " is off the table; the polygon does not close");
    }
    poly.vertices.push_back(v);
  }
  return poly;
}

std::vector<Point2> GridSet::finite_points() const {
  std::vector<Point2> out;
  for (const GridPoint& g : points) {
    if (!g.at_infinity) out.push_back(g.point);
  }
  return out;
}

std::vector<GridSet> grid_sets(const PonceletPolygon& poly) {
  const ConfocalConic caustic(poly.family, poly.lambda_caustic);
  const int n = poly.n;
  std::vector<GridSet> sets;
  for (int m = 0; m <= (n - 1) / 2; ++m) {
    GridSet s{SetKind::P, m, n, poly.x0, {}};
    for (int i = 0; i < n; ++i) s.points.push_back(meet(poly, caustic, i, (i + m) % n));
    sets.push_back(std::move(s));
  }
  for (int q = 0; q < n; ++q) {
    GridSet s{SetKind::Q, q, n, poly.x0, {}};
    for (int i = 0; i < n; ++i) {
      const int j = ((q - i) % n + n) % n;
      if (i <= j) s.points.push_back(meet(poly, caustic, i, j));
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

FittedConic fit_conic(const std::vector<Point2>& points) {
  if (points.size() < 5) throw DomainError("fit_conic: need at least 5 points");
  Point2 centroid{0.0, 0.0};
  for (const Point2& p : points) {
    if (!is_finite(p)) throw DomainError("fit_conic: non-finite point");
    centroid = centroid + p;
  }
  centroid = (1.0 / points.size()) * centroid;
  double mean_dist = 0.0;
  for (const Point2& p : points) mean_dist += distance(p, centroid);
  mean_dist /= points.size();
  if (!(mean_dist > 0.0)) throw DegenerateError("fit_conic: coincident points");
  const double s = std::sqrt(2.0) / mean_dist;
  Eigen::Matrix3d t;
  t << s, 0.0, -s * centroid.x1, 0.0, s, -s * centroid.x2, 0.0, 0.0, 1.0;

  const Eigen::Index rows = std::max<Eigen::Index>(6, static_cast<Eigen::Index>(points.size()));
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, 6);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const double x = s * (points[r].x1 - centroid.x1);
    const double y = s * (points[r].x2 - centroid.x2);
    design.row(static_cast<Eigen::Index>(r)) << x * x, x * y, y * y, x, y, 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(4) < 1e-10 * sv(0)) throw DegenerateError("fit_conic: points do not determine a conic");
  const Eigen::Matrix<double, 6, 1> c = svd.matrixV().col(5);
  Eigen::Matrix3d m;
  m << c(0), 0.5 * c(1), 0.5 * c(3),
       0.5 * c(1), c(2), 0.5 * c(4),
       0.5 * c(3), 0.5 * c(4), c(5);
  return {GeneralConic(t.transpose() * m * t), sv(5) / sv(0)};
}

std::vector<Point2> symmetry_complete(const std::vector<Point2>& points) {
  std::vector<Point2> out;
  for (const Point2& p : points) {
    for (const Point2& q : {p, Point2{-p.x1, p.x2}, Point2{p.x1, -p.x2}, Point2{-p.x1, -p.x2}}) {
      const double tol = 1e-12 * std::max(1.0, norm(q));
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Point2& r) { return distance(r, q) <= tol; });
      if (!seen) out.push_back(q);
    }
  }
  return out;
}

FittedConic fit_grid_set(const GridSet& set, const ConfocalFamily& family) {
  std::vector<Point2> pts = set.finite_points();
  const double tol = 1e-9 * family.scale();
  auto on_axis = [&](auto coord) {
    return !pts.empty() && std::all_of(pts.begin(), pts.end(), [&](const Point2& p) { return std::abs(coord(p)) <= tol; });
  };
  if (on_axis([](const Point2& p) { return p.x2; })) {
    return {GeneralConic(Eigen::Vector3d(0.0, 1.0, 0.0).asDiagonal().toDenseMatrix()), 0.0};
  }
  if (on_axis([](const Point2& p) { return p.x1; })) {
    return {GeneralConic(Eigen::Vector3d(1.0, 0.0, 0.0).asDiagonal().toDenseMatrix()), 0.0};
  }
  if (pts.size() < 5) pts = symmetry_complete(pts);
  return fit_conic(pts);
}

Confocality confocality_residual(const ConfocalFamily& family, const FittedConic& fc) {
  const Eigen::Matrix3d& m = fc.conic.matrix();
  Confocality out;
  const GeneralConic x1_axis(Eigen::Vector3d(0.0, 1.0, 0.0).asDiagonal().toDenseMatrix());
  const GeneralConic x2_axis(Eigen::Vector3d(1.0, 0.0, 0.0).asDiagonal().toDenseMatrix());
  if (conic_distance(fc.conic, x1_axis) <= 1e-12 || conic_distance(fc.conic, x2_axis) <= 1e-12) {
    out.degenerate_member = true;
    out.hyperbola = true;
    out.lambda = conic_distance(fc.conic, x1_axis) <= 1e-12 ? -family.a2_sq() : -family.a1_sq();
    return out;
  }
  const double quad = std::max(std::abs(m(0, 0)), std::abs(m(1, 1)));
  if (!(quad > 0.0) || m(0, 0) == 0.0 || m(1, 1) == 0.0) {
    throw DegenerateError("confocality_residual: conic has no axis form");
  }
  out.misalignment = std::max({std::abs(m(0, 1)), std::abs(m(0, 2)), std::abs(m(1, 2))}) / quad;
  const double s1 = -m(2, 2) / m(0, 0);
  const double s2 = -m(2, 2) / m(1, 1);
  out.focal_gap = std::abs((s1 - s2) - (family.a1_sq() - family.a2_sq())) / family.a1_sq();
  // Each s_i carries a relative error, so the smaller axis pins lambda best.
  const double w1 = 1.0 / (s1 * s1);
  const double w2 = 1.0 / (s2 * s2);
  out.lambda = (w1 * (s1 - family.a1_sq()) + w2 * (s2 - family.a2_sq())) / (w1 + w2);
  out.hyperbola = s1 * s2 < 0.0;

  auto member_dual = [&](double lambda) {
    return GeneralConic(Eigen::Vector3d(family.a1_sq() + lambda, family.a2_sq() + lambda, -1.0)
                            .asDiagonal()
                            .toDenseMatrix());
  };
  Eigen::Matrix<double, 6, 3> stack;
  stack.col(0) = dual_conic(fc.conic).as_vector();
  stack.col(1) = member_dual(0.0).as_vector();
  stack.col(2) = member_dual(family.a1_sq()).as_vector();
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 6, 3>>(stack).singularValues();
  out.pencil_ratio = sv(2) / sv(0);
  return out;
}

Point2 equivalence_signs(const GridSet& set_a, const GridSet& set_b) {
  const double g = std::abs(set_a.index - set_b.index) % 2 == 0 ? 1.0 : -1.0;
  if (set_a.kind == SetKind::P) return {g, g};
  const double ua = set_a.x0 + set_a.index / (2.0 * set_a.n);
  const double ub = set_b.x0 + set_b.index / (2.0 * set_b.n);
  return odd_quadrants(ua) == odd_quadrants(ub) ? Point2{g, g} : Point2{-g, g};
}

double equivalence_gap(const ConfocalFamily& family, const GridSet& set_a, const GridSet& set_b) {
  if (set_a.kind != set_b.kind) throw DomainError("equivalence_gap: sets of different kinds");
  if (set_a.points.size() != set_b.points.size()) throw DomainError("equivalence_gap: sets of different sizes");
  const Confocality ca = confocality_residual(family, fit_grid_set(set_a, family));
  const Confocality cb = confocality_residual(family, fit_grid_set(set_b, family));
  const bool swap = ca.degenerate_member && !cb.degenerate_member;
  const GridSet& src = swap ? set_b : set_a;
  const GridSet& dst = swap ? set_a : set_b;
  const double lambda = swap ? cb.lambda : ca.lambda;
  const double mu = swap ? ca.lambda : cb.lambda;
  const Point2 s = equivalence_signs(src, dst);
  std::vector<Point2> image;
  for (const Point2& p : src.finite_points()) {
    const Point2 q = lambda == mu ? p : ivory_map(family, lambda, mu, p);
    image.push_back({s.x1 * q.x1, s.x2 * q.x2});
  }
  return hausdorff(image, dst.finite_points());
}

double normal_angle_at(const ConfocalConic& ellipse, double t) {
  return wrap_angle(std::atan2(std::sin(t) / std::sqrt(ellipse.axis2_sq()), std::cos(t) / std::sqrt(ellipse.axis1_sq())));
}

std::vector<GridCoordinate> grid_xy_coords(const PonceletPolygon& poly, const CanonicalChart& chart) {
  const ConfocalConic& caustic = chart.caustic();
  std::vector<GridCoordinate> out;
  for (const GridSet& set : grid_sets(poly)) {
    if (set.kind != SetKind::P) continue;
    for (const GridPoint& g : set.points) {
      if (g.at_infinity) continue;
      GridCoordinate c{SetKind::P, set.index, g.i, g.point, 0.0, 0.0};
      if (set.index == 0) {
        const Point2& p = g.point;
        c.x = chart.eval(std::atan2(p.x2 / caustic.axis2_sq(), p.x1 / caustic.axis1_sq()));
      } else {
        const TangentPair tp = tangents_from(caustic, g.point);
        double xa = chart.eval(normal_angle_at(caustic, tp.ta));
        double xb = chart.eval(normal_angle_at(caustic, tp.tb));
        double d = wrap_unit(xb - xa);
        if (d >= 0.5) {
          std::swap(xa, xb);
          d = 1.0 - d;
        }
        c.y = 0.5 * d;
        c.x = wrap_unit(xa + c.y);
      }
      out.push_back(c);
    }
  }
  return out;
}

double sampled_separation(const ConfocalFamily& family, double lambda, const GeneralConic& other, double w,
                          double h, int samples) {
  const ConfocalConic hyp(family, lambda);
  if (hyp.is_ellipse()) throw DomainError("sampled_separation: member is not a hyperbola");
  const double ra = std::sqrt(hyp.axis1_sq());
  const double rb = std::sqrt(-hyp.axis2_sq());
  if (ra > w) return std::numeric_limits<double>::infinity();
  const double umax = std::min(std::acosh(w / ra), std::asinh(h / rb));
  double best = std::numeric_limits<double>::infinity();
  int sign = 0;
  for (int i = 0; i < samples; ++i) {
    const double u = -umax + 2.0 * umax * i / (samples - 1);
    for (const double sx : {1.0, -1.0}) {
      const Point2 p{sx * ra * std::cosh(u), rb * std::sinh(u)};
      const double f = other.evaluate(p);
      const int sg = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
      if (sg == 0 || (sign != 0 && sg != sign)) return 0.0;
      sign = sg;
      best = std::min(best, std::abs(f) / std::max(norm(other.gradient(p)), 1e-300));
    }
  }
  return best;
}

}  // namespace poncelet

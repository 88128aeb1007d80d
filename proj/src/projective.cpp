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

#include "poncelet/projective.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "poncelet/canonical.hpp"

namespace poncelet {

namespace {

Eigen::Vector3d homogeneous(Point2 p) { return {p.x1, p.x2, 1.0}; }

/// Null vectors of a 3x3 symmetric pencil member, `count` of them.
Eigen::MatrixXd null_space(const Eigen::Matrix3d& m, int count, double& next_singular_ratio) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int keep = 3 - count;
  next_singular_ratio = sv(0) > 0.0 ? sv(keep) / sv(0) : 0.0;
  return svd.matrixV().rightCols(count);
}

std::array<std::complex<double>, 3> to_array(const Eigen::Vector3cd& v) { return {v(0), v(1), v(2)}; }

}  // namespace

ProjectiveMap::ProjectiveMap(const Eigen::Matrix3d& t) : t_(t) {
  if (!t.allFinite()) throw DomainError("projective map: non-finite matrix");
  const double scale = t.norm();
  if (!(std::abs(t.determinant()) > 1e-14 * scale * scale * scale)) {
    throw DegenerateError("projective map: singular matrix");
  }
  inv_ = t.inverse();
}

double ProjectiveMap::condition() const {
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(t_).singularValues();
  return sv(0) / sv(2);
}

Point2 apply_map(const ProjectiveMap& map, Point2 p) {
  const Eigen::Vector3d h = map.matrix() * homogeneous(p);
  if (!(std::abs(h(2)) > 1e-12 * h.norm())) throw DomainError("apply_map: image point at infinity");
  return {h(0) / h(2), h(1) / h(2)};
}

OrientedLine apply_map(const ProjectiveMap& map, const OrientedLine& line) {
  const Point2 q0 = line.foot();
  const Point2 q1 = q0 + line.direction();
  const Point2 r0 = apply_map(map, q0);
  const Point2 r1 = apply_map(map, q1);
  if (distance(r0, r1) == 0.0) throw DegenerateError("apply_map: line collapses");
  return OrientedLine::through(r0, r1 - r0);
}

GeneralConic apply_map(const ProjectiveMap& map, const GeneralConic& conic) {
  return GeneralConic(map.inverse().transpose() * conic.matrix() * map.inverse());
}

bool is_real_ellipse(const GeneralConic& conic) {
  const Eigen::Matrix3d& m = conic.matrix();
  const Eigen::Matrix2d b = m.topLeftCorner<2, 2>();
  if (!(b.determinant() > 0.0)) return false;
  const double sign = b(0, 0) > 0.0 ? 1.0 : -1.0;
  return sign * m.determinant() < 0.0;
}

EllipseFrame ellipse_frame(const GeneralConic& conic) {
  if (!is_real_ellipse(conic)) throw DomainError("ellipse_frame: not a real ellipse");
  Eigen::Matrix3d m = conic.matrix();
  if (m(0, 0) < 0.0) m = -m;
  const Eigen::Matrix2d b = m.topLeftCorner<2, 2>();
  const Eigen::Vector2d lin = m.topRightCorner<2, 1>();
  const Eigen::Vector2d center = -b.ldlt().solve(lin);
  const double level = m(2, 2) + lin.dot(center);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
  const Eigen::Vector2d e = es.eigenvalues();
  const Eigen::Vector2d axis = es.eigenvectors().col(0);
  return {{center(0), center(1)}, {axis(0), axis(1)}, std::sqrt(-level / e(0)), std::sqrt(-level / e(1))};
}

std::vector<Point2> sample_ellipse(const GeneralConic& conic, int count) {
  const EllipseFrame f = ellipse_frame(conic);
  const Point2 perp{-f.axis.x2, f.axis.x1};
  std::vector<Point2> out;
  for (int i = 0; i < count; ++i) {
    const double t = kTwoPi * i / count;
    out.push_back(f.center + (f.r1 * std::cos(t)) * f.axis + (f.r2 * std::sin(t)) * perp);
  }
  return out;
}

NormalizedPair normalize_pair(const GeneralConic& gamma, const GeneralConic& Gamma) {
  if (!is_real_ellipse(gamma) || !is_real_ellipse(Gamma)) throw DomainError("normalize_pair: both conics must be real ellipses");
  for (const Point2& p : sample_ellipse(gamma, 64)) {
    if (!(Gamma.evaluate(p) < 0.0)) throw DomainError("normalize_pair: inner ellipse is not inside the outer one");
  }
  const Eigen::Matrix3d& mg = gamma.matrix();
  const Eigen::Matrix3d& mG = Gamma.matrix();
  const Eigen::Matrix3d pencil = mG.inverse() * mg;
  Eigen::EigenSolver<Eigen::Matrix3d> es(pencil, false);
  const Eigen::Vector3cd ev = es.eigenvalues();
  const auto spectrum = to_array(ev);
  const double mag = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(ev(i).imag()) > 1e-9 * mag) throw NonGenericPairError("normalize_pair: complex pencil spectrum", spectrum);
  }
  std::array<double, 3> t{ev(0).real(), ev(1).real(), ev(2).real()};
  std::sort(t.begin(), t.end());
  const double sep = 1e-8 * mag;
  if (t[2] - t[0] <= sep) throw NonGenericPairError("normalize_pair: proportional conics", spectrum);

  // Group equal eigenvalues and take each eigenspace from the pencil member.
  Eigen::Matrix3d v;
  int col = 0;
  for (int i = 0; i < 3;) {
    int j = i + 1;
    while (j < 3 && t[j] - t[i] <= sep) ++j;
    const int count = j - i;
    double mean = 0.0;
    for (int r = i; r < j; ++r) mean += t[r] / count;
    double ratio = 0.0;
    Eigen::MatrixXd w = null_space(mg - mean * mG, count, ratio);
    if (count == 2) {
      if (ratio > 1e-7) throw NonGenericPairError("normalize_pair: defective pencil spectrum", spectrum);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> inner(w.transpose() * mG * w);
      w = w * inner.eigenvectors();
    }
    v.middleCols(col, count) = w;
    col += count;
    i = j;
  }

  const Eigen::Matrix3d dG = v.transpose() * mG * v;
  const Eigen::Matrix3d dg = v.transpose() * mg * v;
  auto off = [](const Eigen::Matrix3d& d) {
    return std::max({std::abs(d(0, 1)), std::abs(d(0, 2)), std::abs(d(1, 2))}) / d.diagonal().cwiseAbs().maxCoeff();
  };
  if (off(dG) > 1e-9 || off(dg) > 1e-9) throw NonGenericPairError("normalize_pair: no common self-polar frame", spectrum);

  int inner_vertex = -1;
  for (int i = 0; i < 3; ++i) {
    if (dG(i, i) < 0.0) {
      if (inner_vertex >= 0) throw DomainError("normalize_pair: outer conic is not an ellipse");
      inner_vertex = i;
    }
  }
  if (inner_vertex < 0 || !(dg(inner_vertex, inner_vertex) < 0.0)) {
    throw DomainError("normalize_pair: conics do not share an interior vertex (not nested)");
  }
  std::array<int, 3> order{(inner_vertex + 1) % 3, (inner_vertex + 2) % 3, inner_vertex};
  auto inner_axis = [&](int i) { return -dg(inner_vertex, inner_vertex) / dg(i, i); };
  auto outer_axis = [&](int i) { return -dG(inner_vertex, inner_vertex) / dG(i, i); };
  auto scale_sq = [&]() { return (outer_axis(order[0]) - inner_axis(order[0])) / (outer_axis(order[1]) - inner_axis(order[1])); };
  if (!(outer_axis(order[0]) > inner_axis(order[0]) && outer_axis(order[1]) > inner_axis(order[1]))) {
    throw DomainError("normalize_pair: inner ellipse is not inside the outer one");
  }
  if (inner_axis(order[0]) < inner_axis(order[1]) * scale_sq()) {
    std::swap(order[0], order[1]);
  }
  const double s2 = scale_sq();
  double a1 = inner_axis(order[0]);
  double a2 = inner_axis(order[1]) * s2;
  if (a2 > a1) a2 = a1;

  Eigen::Matrix3d perm = Eigen::Matrix3d::Zero();
  for (int r = 0; r < 3; ++r) perm(r, order[r]) = 1.0;
  const Eigen::Matrix3d scale = Eigen::Vector3d(1.0, std::sqrt(s2), 1.0).asDiagonal();
  const ProjectiveMap map(scale * perm * v.inverse());

  const ConfocalFamily family(a1, a2);
  const double lambda_Gamma = outer_axis(order[0]) - inner_axis(order[0]);
  NormalizedPair out{map, family, 0.0, lambda_Gamma, {t[0], t[1], t[2]}};
  const double dg_err = conic_distance(apply_map(map, gamma), to_general(ConfocalConic(family, 0.0)));
  const double dG_err = conic_distance(apply_map(map, Gamma), to_general(ConfocalConic(family, lambda_Gamma)));
  if (dg_err > 1e-8 || dG_err > 1e-8) {
    throw Error("normalize_pair: normalized pair misses the confocal members (" + std::to_string(std::max(dg_err, dG_err)) + ")");
  }
  return out;
}

std::optional<Rational> detect_rational(double c, long long q_max, double tol) {
  if (!std::isfinite(c) || q_max < 1) return std::nullopt;
  long long h_prev = 1, h_prev2 = 0;
  long long k_prev = 0, k_prev2 = 1;
  double x = c;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    const long long ai = static_cast<long long>(a);
    const long long h = ai * h_prev + h_prev2;
    const long long k = ai * k_prev + k_prev2;
    if (k > q_max) break;
    if (std::abs(c - static_cast<double>(h) / static_cast<double>(k)) <= tol) return Rational{h, k};
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - a;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

PonceletStep poncelet_step(const GeneralConic& gamma, const GeneralConic& Gamma, Point2 x,
                           const std::optional<Eigen::Vector3d>& incoming) {
  const Eigen::Matrix3d dual = dual_conic(gamma).matrix();
  const Eigen::Vector3d h = homogeneous(x);
  Eigen::Index small = 0;
  h.cwiseAbs().minCoeff(&small);
  const Eigen::Vector3d u = h.cross(Eigen::Vector3d::Unit(small)).normalized();
  const Eigen::Vector3d w = h.cross(u).normalized();
  Eigen::Matrix2d q;
  q << u.dot(dual * u), u.dot(dual * w), w.dot(dual * u), w.dot(dual * w);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
  const Eigen::Vector2d e = es.eigenvalues();
  if (!(e(0) <= 0.0 && e(1) >= 0.0)) throw DomainError("poncelet_step: point is inside the inner conic");
  std::array<Eigen::Vector3d, 2> lines;
  for (int s = 0; s < 2; ++s) {
    const Eigen::Vector2d coef = es.eigenvectors() * Eigen::Vector2d(std::sqrt(e(1)), (s == 0 ? 1.0 : -1.0) * std::sqrt(-e(0)));
    lines[s] = (coef(0) * u + coef(1) * w).normalized();
  }
  Eigen::Vector3d line = lines[0];
  if (incoming) {
    const Eigen::Vector3d in = incoming->normalized();
    line = lines[0].cross(in).norm() >= lines[1].cross(in).norm() ? lines[0] : lines[1];
  }
  const Eigen::Matrix3d& m = Gamma.matrix();
  const Eigen::Vector2d d(line(1), -line(0));
  const Eigen::Vector2d b = m.topRightCorner<2, 1>();
  const Eigen::Matrix2d a = m.topLeftCorner<2, 2>();
  const Eigen::Vector2d xv(x.x1, x.x2);
  const double qa = d.dot(a * d);
  const double qb = d.dot(a * xv + b);
  const double qc = Gamma.evaluate(x);
  const double disc = std::max(0.0, qb * qb - qa * qc);
  const double s = -(qb + std::copysign(std::sqrt(disc), qb)) / qa;
  return {{x.x1 + s * d(0), x.x2 + s * d(1)}, line};
}

double poncelet_defect(const GeneralConic& gamma, const GeneralConic& Gamma, int n, int starts, std::uint64_t seed) {
  if (n < 1 || starts < 1) throw DomainError("poncelet_defect: need n >= 1 and starts >= 1");
  const EllipseFrame f = ellipse_frame(Gamma);
  const Point2 perp{-f.axis.x2, f.axis.x1};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double worst = 0.0;
  for (int s = 0; s < starts; ++s) {
    const double t = angle(rng);
    const Point2 x0 = f.center + (f.r1 * std::cos(t)) * f.axis + (f.r2 * std::sin(t)) * perp;
    Point2 x = x0;
    std::optional<Eigen::Vector3d> incoming;
    for (int i = 0; i < n; ++i) {
      const PonceletStep step = poncelet_step(gamma, Gamma, x, incoming);
      x = step.next;
      incoming = step.line;
    }
    worst = std::max(worst, distance(x, x0) / f.r1);
  }
  return worst;
}

ProjectiveMap random_projective_map(std::uint64_t seed, const GeneralConic& keep_finite) {
  const EllipseFrame f = ellipse_frame(keep_finite);
  const double size = f.r1 + norm(f.center);
  const std::vector<Point2> ring = sample_ellipse(keep_finite, 64);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double th = kTwoPi * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Eigen::Matrix2d rot;
    rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    Eigen::Matrix2d stretch;
    stretch << 1.0 + 0.2 * g(rng), 0.2 * g(rng), 0.0, 1.0 + 0.2 * g(rng);
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    t.topLeftCorner<2, 2>() = rot * stretch;
    t(0, 2) = 0.3 * size * g(rng);
    t(1, 2) = 0.3 * size * g(rng);
    t(2, 0) = 0.15 * g(rng) / size;
    t(2, 1) = 0.15 * g(rng) / size;
    const bool finite = std::all_of(ring.begin(), ring.end(), [&](const Point2& p) {
      return t(2, 0) * p.x1 + t(2, 1) * p.x2 + 1.0 > 0.5;
    });
    if (finite && std::abs(t.topLeftCorner<2, 2>().determinant()) > 0.2) return ProjectiveMap(t);
  }
  throw Error("random_projective_map: no admissible map found");
}

double pair_rotation_number(const GeneralConic& gamma, const GeneralConic& Gamma, int resolution) {
  const NormalizedPair np = normalize_pair(gamma, Gamma);
  return rotation_number(np.family, np.lambda_gamma, np.lambda_Gamma, resolution).c;
}

std::optional<ClosureResult> closure_test(const GeneralConic& gamma, const GeneralConic& Gamma, int n_max, int starts,
                                          std::uint64_t seed, int resolution) {
  const double c = pair_rotation_number(gamma, Gamma, resolution);
  const auto r = detect_rational(c, n_max);
  if (!r || r->p == 0) return std::nullopt;
  const int n = static_cast<int>(r->q);
  return ClosureResult{n, static_cast<int>(r->p), c, poncelet_defect(gamma, Gamma, n, starts, seed)};
}

}  // namespace poncelet

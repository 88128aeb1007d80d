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
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "poncelet/conics.hpp"
#include "poncelet/linespace.hpp"

namespace poncelet {

/// The pencil of a pair of conics is complex, defective or fully degenerate.
class NonGenericPairError : public Error {
 public:
  NonGenericPairError(const std::string& what, std::array<std::complex<double>, 3> spectrum)
      : Error(what), spectrum_(spectrum) {}
  const std::array<std::complex<double>, 3>& spectrum() const { return spectrum_; }

 private:
  std::array<std::complex<double>, 3> spectrum_;
};

/// Invertible 3x3 matrix acting on homogeneous points (x1, x2, 1).
class ProjectiveMap {
 public:
  explicit ProjectiveMap(const Eigen::Matrix3d& t);
  static ProjectiveMap identity() { return ProjectiveMap(Eigen::Matrix3d::Identity()); }

  const Eigen::Matrix3d& matrix() const { return t_; }
  const Eigen::Matrix3d& inverse() const { return inv_; }
  /// 2-norm condition number.
  double condition() const;
  ProjectiveMap then(const ProjectiveMap& next) const { return ProjectiveMap(next.t_ * t_); }

 private:
  Eigen::Matrix3d t_;
  Eigen::Matrix3d inv_;
};

/// Throws DomainError when the image is at infinity.
Point2 apply_map(const ProjectiveMap& map, Point2 p);
/// The image line, oriented along the image of the original direction at the
/// foot point.
OrientedLine apply_map(const ProjectiveMap& map, const OrientedLine& line);
/// M -> T^-T M T^-1.
GeneralConic apply_map(const ProjectiveMap& map, const GeneralConic& conic);

/// Center and principal axes of a real ellipse.
struct EllipseFrame {
  Point2 center;
  /// Unit direction of the first axis.
  Point2 axis;
  double r1;
  double r2;
};
/// Throws DomainError when the conic is not a real ellipse.
EllipseFrame ellipse_frame(const GeneralConic& conic);
/// Points at equispaced parameters of the ellipse.
std::vector<Point2> sample_ellipse(const GeneralConic& conic, int count);
bool is_real_ellipse(const GeneralConic& conic);

struct NormalizedPair {
  ProjectiveMap map;
  ConfocalFamily family;
  /// Always 0: the inner ellipse fixes the family.
  double lambda_gamma;
  double lambda_Gamma;
  std::array<double, 3> spectrum;
};

/// Projective map sending a nested pair of ellipses to a confocal pair, with
/// the inner one as the member lambda = 0. The common self-polar triangle
/// comes from the eigenvectors of M_Gamma^-1 M_gamma. A repeated eigenvalue
/// is accepted when its eigenspace is two-dimensional (the pair is then
/// concentric circles up to a projective map), and the frame inside it is
/// chosen to diagonalize both conics.
/// Throws DomainError when the conics are not nested real ellipses and
/// NonGenericPairError for complex or defective spectra.
NormalizedPair normalize_pair(const GeneralConic& gamma, const GeneralConic& Gamma);

struct Rational {
  long long p;
  long long q;
};
/// The fraction p/q with the smallest q <= q_max within tol of c, found
/// along the continued fraction expansion.
std::optional<Rational> detect_rational(double c, long long q_max, double tol = 1e-9);

/// From a point on Gamma, follows the tangent to gamma other than `incoming`
/// (either one when incoming is empty) to the second intersection with Gamma.
/// Lines are homogeneous 3-vectors.
struct PonceletStep {
  Point2 next;
  Eigen::Vector3d line;
};
PonceletStep poncelet_step(const GeneralConic& gamma, const GeneralConic& Gamma, Point2 x,
                           const std::optional<Eigen::Vector3d>& incoming);

/// Distance between start and end after n Poncelet steps from `starts`
/// points of Gamma at random parameters, relative to Gamma's major semi-axis.
double poncelet_defect(const GeneralConic& gamma, const GeneralConic& Gamma, int n, int starts, std::uint64_t seed);

struct ClosureResult {
  int n;
  int k;
  double rotation_number;
  /// Worst poncelet_defect over the random starts.
  double defect;
};

/// Normalizes the pair, measures its rotation number and returns (n, k) when
/// it is rational with denominator at most n_max; then checks closure in the
/// original frame from `starts` random points.
std::optional<ClosureResult> closure_test(const GeneralConic& gamma, const GeneralConic& Gamma, int n_max,
                                          int starts = 20, std::uint64_t seed = 42, int resolution = 4096);

/// A seeded random projective map T = [[A, t], [v, 1]] near a similarity,
/// redrawn until the line at infinity of the image stays well away from
/// `keep_finite`, so that ellipses map to ellipses.
ProjectiveMap random_projective_map(std::uint64_t seed, const GeneralConic& keep_finite);

/// Rotation number of a nested pair after normalization.
double pair_rotation_number(const GeneralConic& gamma, const GeneralConic& Gamma, int resolution = 4096);

}  // namespace poncelet

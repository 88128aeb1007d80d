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

#include <doctest.h>

#include <cmath>
#include <random>

#include "poncelet/canonical.hpp"
#include "poncelet/projective.hpp"

using namespace poncelet;

namespace {

GeneralConic diag(double a, double b, double c) { return GeneralConic(Eigen::Vector3d(a, b, c).asDiagonal()); }

struct ClosingPair {
  GeneralConic gamma;
  GeneralConic Gamma;
};

ClosingPair pentagon_pair() {
  const ConfocalFamily f(4, 1);
  const double l = find_caustic(f, 0.0, 1, 5);
  return {to_general(ConfocalConic(f, l)), to_general(ConfocalConic(f, 0))};
}

}  // namespace

TEST_CASE("apply_map") {
  const ProjectiveMap id = ProjectiveMap::identity();
  const Point2 p = apply_map(id, Point2{0.3, -1.2});
  CHECK(p.x1 == 0.3);
  CHECK(p.x2 == -1.2);
  const GeneralConic unit = diag(1, 1, -1);
  CHECK(conic_distance(apply_map(id, unit), unit) == 0.0);

  const ProjectiveMap stretch(Eigen::Vector3d(2, 1, 1).asDiagonal());
  CHECK(conic_distance(apply_map(stretch, unit), diag(0.25, 1, -1)) <= 1e-15);

  const ProjectiveMap t = random_projective_map(5, unit);
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  const GeneralConic image = apply_map(t, unit);
  for (int i = 0; i < 20; ++i) {
    const double a = u(g);
    const Point2 q = apply_map(t, Point2{std::cos(a), std::sin(a)});
    CHECK(std::abs(image.evaluate(q)) / norm(image.gradient(q)) <= 1e-12);
    // Tangent lines map to tangent lines.
    const OrientedLine tl = apply_map(t, OrientedLine{a, 1.0});
    const Eigen::Vector3d h(std::cos(tl.phi), std::sin(tl.phi), -tl.p);
    CHECK(std::abs(h.dot(dual_conic(image).matrix() * h)) <= 1e-12);
  }
  const ProjectiveMap sends_to_infinity((Eigen::Matrix3d() << 1, 0, 0, 0, 1, 0, 1, 0, 1).finished());
  CHECK_THROWS_AS(apply_map(sends_to_infinity, Point2{-1.0, 0.0}), DomainError);
}

TEST_CASE("ellipse frame") {
  const EllipseFrame fr = ellipse_frame(diag(0.25, 1, -1));
  CHECK(fr.r1 == doctest::Approx(2.0));
  CHECK(fr.r2 == doctest::Approx(1.0));
  CHECK(is_real_ellipse(diag(1, 1, -1)));
  CHECK_FALSE(is_real_ellipse(diag(1, 1, 1)));
  CHECK_FALSE(is_real_ellipse(diag(1, -1, -1)));
  CHECK_THROWS_AS(ellipse_frame(diag(1, -1, -1)), DomainError);
  for (const Point2& p : sample_ellipse(diag(0.25, 1, -1), 12)) CHECK(std::abs(p.x1 * p.x1 / 4 + p.x2 * p.x2 - 1) < 1e-14);
}

TEST_CASE("normalize_pair") {
  const ConfocalFamily f(4, 1);
  SUBCASE("already confocal") {
    const NormalizedPair np = normalize_pair(to_general(ConfocalConic(f, 0)), to_general(ConfocalConic(f, 5)));
    CHECK(np.family.a1_sq() == doctest::Approx(4.0));
    CHECK(np.family.a2_sq() == doctest::Approx(1.0));
    CHECK(np.lambda_gamma == 0.0);
    CHECK(np.lambda_Gamma == doctest::Approx(5.0));
  }
  SUBCASE("projective image of a confocal pair") {
    const ClosingPair pair = pentagon_pair();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ProjectiveMap t = random_projective_map(seed, pair.Gamma);
      const GeneralConic g = apply_map(t, pair.gamma), G = apply_map(t, pair.Gamma);
      const NormalizedPair np = normalize_pair(g, G);
      CHECK(conic_distance(apply_map(np.map, g), to_general(ConfocalConic(np.family, 0.0))) <= 1e-8);
      CHECK(conic_distance(apply_map(np.map, G), to_general(ConfocalConic(np.family, np.lambda_Gamma))) <= 1e-8);
    }
  }
  SUBCASE("concentric circles") {
    const GeneralConic g = diag(1, 1, -0.25), G = diag(1, 1, -1);
    const NormalizedPair np = normalize_pair(g, G);
    CHECK(conic_distance(apply_map(np.map, g), to_general(ConfocalConic(np.family, 0.0))) <= 1e-8);
    CHECK(conic_distance(apply_map(np.map, G), to_general(ConfocalConic(np.family, np.lambda_Gamma))) <= 1e-8);
  }
  SUBCASE("pairs that are not nested ellipses") {
    CHECK_THROWS_AS(normalize_pair(diag(1, 1, -1), diag(1, 1, -0.25)), DomainError);
    CHECK_THROWS_AS(normalize_pair(diag(1, -1, -1), diag(1, 1, -4)), DomainError);
  }
}

TEST_CASE("detect_rational") {
  const auto r = detect_rational(0.4, 20);
  REQUIRE(r);
  CHECK(r->p == 2);
  CHECK(r->q == 5);
  CHECK_FALSE(detect_rational(std::sqrt(2.0) - 1.0, 50));
  CHECK(detect_rational(1.0 / 3 + 1e-12, 10)->q == 3);
}

TEST_CASE("closure_test") {
  const ClosingPair pair = pentagon_pair();
  const auto r = closure_test(pair.gamma, pair.Gamma, 11);
  REQUIRE(r);
  CHECK(r->n == 5);
  CHECK(r->k == 1);
  CHECK(r->defect <= 1e-9);

  const auto circles = closure_test(diag(1, 1, -0.25), diag(1, 1, -1), 11);
  REQUIRE(circles);
  CHECK(circles->n == 3);
  CHECK(circles->k == 1);

  const ConfocalFamily f(4, 1);
  CHECK_FALSE(closure_test(to_general(ConfocalConic(f, -0.3)), pair.Gamma, 6));
}

TEST_CASE("poncelet step follows tangents") {
  const ClosingPair pair = pentagon_pair();
  const auto start = sample_ellipse(pair.Gamma, 7)[3];
  const PonceletStep s = poncelet_step(pair.gamma, pair.Gamma, start, std::nullopt);
  CHECK(std::abs(pair.Gamma.evaluate(s.next)) <= 1e-12);
  CHECK(std::abs(s.line.dot(dual_conic(pair.gamma).matrix() * s.line)) <= 1e-12 * s.line.squaredNorm());
  const PonceletStep t = poncelet_step(pair.gamma, pair.Gamma, s.next, s.line);
  CHECK((t.line.normalized() - s.line.normalized()).norm() > 1e-3);
  CHECK((t.line.normalized() + s.line.normalized()).norm() > 1e-3);
  CHECK(poncelet_defect(pair.gamma, pair.Gamma, 5, 20, 42) <= 1e-9);
  CHECK(poncelet_defect(pair.gamma, pair.Gamma, 4, 20, 42) > 1e-2);
}

TEST_CASE("rotation number is projectively invariant") {
  const ClosingPair pair = pentagon_pair();
  const double c = pair_rotation_number(pair.gamma, pair.Gamma);
  CHECK(c == doctest::Approx(0.2).epsilon(1e-12));
  for (std::uint64_t seed = 20; seed < 25; ++seed) {
    const ProjectiveMap t = random_projective_map(seed, pair.Gamma);
    CHECK(std::abs(pair_rotation_number(apply_map(t, pair.gamma), apply_map(t, pair.Gamma)) - c) <= 1e-8);
  }
}

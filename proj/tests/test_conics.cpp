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

#include "poncelet/conics.hpp"

using namespace poncelet;

namespace {

GeneralConic diag(double a, double b, double c) { return GeneralConic(Eigen::Vector3d(a, b, c).asDiagonal()); }

}  // namespace

TEST_CASE("confocal family validation") {
  CHECK_THROWS_AS(ConfocalFamily(1.0, 4.0), DomainError);
  CHECK_THROWS_AS(ConfocalFamily(4.0, 0.0), DomainError);
  CHECK_NOTHROW(ConfocalFamily(1.0, 1.0));
  CHECK_THROWS_AS(ConfocalFamily(1.0, 1.0).foci(), DegenerateError);
  const auto f = ConfocalFamily(4.0, 1.0).foci();
  CHECK(f[1].x1 == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(ConfocalConic(ConfocalFamily(4, 1), -1.0), DegenerateError);
  CHECK_THROWS_AS(ConfocalConic(ConfocalFamily(4, 1), -4.5), DegenerateError);
  CHECK(ConfocalConic(ConfocalFamily(4, 1), -2.0).kind() == ConicKind::Hyperbola);
}

TEST_CASE("evaluate_confocal") {
  const ConfocalFamily f(4, 1);
  CHECK(evaluate_confocal(ConfocalConic(f, 0), {2, 0}) == doctest::Approx(0.0));
  CHECK(evaluate_confocal(ConfocalConic(f, 0), {0, 0}) == doctest::Approx(-1.0));
  CHECK(evaluate_confocal(ConfocalConic(f, 5), {3, 0}) == doctest::Approx(0.0));
}

TEST_CASE("elliptic coordinates") {
  const ConfocalFamily f(4, 1);
  SUBCASE("vertices") {
    const EllipticCoords a = elliptic_coords(f, {2, 0});
    CHECK(a.lambda1 == doctest::Approx(-1.0));
    CHECK(a.lambda2 == doctest::Approx(0.0));
    const EllipticCoords b = elliptic_coords(f, {0, 1});
    CHECK(b.lambda1 == doctest::Approx(-4.0));
    CHECK(b.lambda2 == doctest::Approx(0.0));
  }
  SUBCASE("generic point against the quadratic formula") {
    // x^2/(4+l) + y^2/(1+l) = 1 at (1, 1/2): l^2 + 3.75 l + 2 = 0.
    const double disc = std::sqrt(3.75 * 3.75 - 8.0);
    const EllipticCoords c = elliptic_coords(f, {1, 0.5});
    CHECK(c.lambda1 == doctest::Approx((-3.75 - disc) / 2).epsilon(1e-12));
    CHECK(c.lambda2 == doctest::Approx((-3.75 + disc) / 2).epsilon(1e-12));
    const Point2 p = from_elliptic(f, c);
    CHECK(std::abs(p.x1 - 1.0) <= 1e-9);
    CHECK(std::abs(p.x2 - 0.5) <= 1e-9);
  }
  SUBCASE("inverse at vertices") {
    const Point2 v = from_elliptic(f, {-1, 0});
    CHECK(v.x1 == doctest::Approx(2.0));
    CHECK(std::abs(v.x2) < 1e-12);
    const Point2 w = from_elliptic(f, {-4, 0});
    CHECK(std::abs(w.x1) < 1e-12);
    CHECK(w.x2 == doctest::Approx(1.0));
  }
  SUBCASE("round trip") {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> l1(-4.0, -1.0), l2(-1.0, 10.0), s(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const EllipticCoords c{l1(g), l2(g)};
      const QuadrantSigns q{s(g) < 0.5 ? -1 : 1, s(g) < 0.5 ? -1 : 1};
      const EllipticCoords back = elliptic_coords(f, from_elliptic(f, c, q));
      worst = std::max({worst, std::abs(back.lambda1 - c.lambda1) / 4.0, std::abs(back.lambda2 - c.lambda2) / 4.0});
    }
    CHECK(worst <= 1e-10);
  }
  CHECK_THROWS_AS(elliptic_coords(ConfocalFamily(1, 1), {0.5, 0.5}), DegenerateError);
  CHECK_THROWS_AS(from_elliptic(f, {0.5, 0.0}), DomainError);
}

TEST_CASE("ivory map") {
  const ConfocalFamily f(4, 1);
  const Point2 a = ivory_map(f, 0, 5, {2, 0});
  CHECK(a.x1 == doctest::Approx(3.0));
  const Point2 b = ivory_map(f, 0, 5, {0, 1});
  CHECK(b.x2 == doctest::Approx(std::sqrt(6.0)));
  const ConfocalConic g0(f, 0);
  const Point2 p{2 * std::cos(0.7), std::sin(0.7)};
  const Point2 q = ivory_map(f, 0, 5, p);
  CHECK(std::abs(elliptic_coords(f, q).lambda1 - elliptic_coords(f, p).lambda1) <= 1e-10);
  CHECK(std::abs(evaluate_confocal(ConfocalConic(f, 5), q)) <= 1e-12);
  CHECK_THROWS_AS(ivory_map(f, 0, -2, p), DomainError);
  CHECK_THROWS_AS(ivory_map(f, -1, 0, p), DegenerateError);
}

TEST_CASE("general conic matrices") {
  CHECK(conic_distance(to_general(ConfocalConic(ConfocalFamily(1, 1), 0)), diag(1, 1, -1)) <= 1e-15);
  CHECK(conic_distance(to_general(ConfocalConic(ConfocalFamily(4, 1), 0)), diag(0.25, 1, -1)) <= 1e-15);
  CHECK(conic_distance(to_general(ConfocalConic(ConfocalFamily(4, 1), -2)), diag(0.5, -1, -1)) <= 1e-15);
  // The same conic up to scale and sign compares equal.
  CHECK(conic_distance(diag(2, 2, -2), diag(-1, -1, 1)) <= 1e-15);
  CHECK(diag(1, 1, -1).evaluate({1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("dual conic") {
  CHECK(conic_distance(dual_conic(diag(1, 1, -1)), diag(1, 1, -1)) <= 1e-15);
  CHECK(conic_distance(dual_conic(diag(0.25, 1, -1)), diag(4, 1, -1)) <= 1e-15);
  std::mt19937_64 g(3);
  std::normal_distribution<double> n;
  for (int i = 0; i < 20; ++i) {
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) m(r, c) = m(c, r) = n(g);
    const GeneralConic c(m);
    CHECK(conic_distance(dual_conic(dual_conic(c)), c) <= 1e-12);
  }
  CHECK_THROWS_AS(dual_conic(diag(1, 1, 0)), DegenerateError);
}

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
#include <numbers>
#include <set>

#include "poncelet/grid.hpp"

using namespace poncelet;
using std::numbers::pi;

namespace {

const GridSet& find_set(const std::vector<GridSet>& sets, SetKind kind, int index) {
  for (const GridSet& s : sets) {
    if (s.kind == kind && s.index == index) return s;
  }
  throw std::logic_error("no such set");
}

}  // namespace

TEST_CASE("polygon in a circle is equilateral") {
  const PonceletPolygon poly = build_polygon(ConfocalFamily(1, 1), 0.0, 3, 1, 0.0);
  CHECK(poly.lambda_caustic == doctest::Approx(-0.75).epsilon(1e-12));
  REQUIRE(poly.vertices.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(norm(poly.vertices[i]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distance(poly.vertices[i], poly.vertices[(i + 1) % 3]) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("polygon vertices lie on the table") {
  const ConfocalFamily f(4, 1);
  const ConfocalConic g0(f, 0);
  for (int k : {1, 2}) {
    const PonceletPolygon poly = build_polygon(f, 0.0, 5, k, 0.0);
    CHECK(std::abs(poly.lambda_caustic - find_caustic(f, 0.0, k, 5)) <= 1e-12);
    for (const Point2& v : poly.vertices) CHECK(std::abs(evaluate_confocal(g0, v)) <= 1e-9);
    // Consecutive sides are related by reflection.
    for (int i = 0; i < 5; ++i) {
      const OrientedLine r = reflect(poly.side_lines[i], g0);
      CHECK(line_distance(r, poly.side_lines[(i + k) % 5], 2.0) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(build_polygon(f, 0.0, 4, 1, 0.0), DomainError);
  CHECK_THROWS_AS(build_polygon(f, 0.0, 9, 3, 0.0), DomainError);
}

TEST_CASE("grid set counts") {
  const ConfocalFamily f(4, 1);
  for (int n : {3, 5, 7}) {
    const PonceletPolygon poly = build_polygon(f, 0.0, n, 1, 1.0 / (8 * n));
    const auto sets = grid_sets(poly);
    int p = 0, q = 0;
    std::set<std::pair<int, int>> distinct;
    for (const GridSet& s : sets) {
      if (s.kind == SetKind::P) {
        ++p;
        CHECK(s.points.size() == static_cast<std::size_t>(n));
      } else {
        ++q;
        CHECK(s.points.size() == static_cast<std::size_t>((n + 1) / 2));
      }
      for (const GridPoint& g : s.points) distinct.insert({std::min(g.i, g.j), std::max(g.i, g.j)});
    }
    CHECK(p == (n + 1) / 2);
    CHECK(q == n);
    CHECK(distinct.size() == static_cast<std::size_t>(n * (n + 1) / 2));
  }
  const PonceletPolygon poly = build_polygon(f, 0.0, 5, 1, 0.0);
  const ConfocalConic caustic(f, poly.lambda_caustic);
  const auto sets = grid_sets(poly);
  for (const GridPoint& g : find_set(sets, SetKind::P, 0).points) {
    CHECK(std::abs(evaluate_confocal(caustic, g.point)) <= 1e-10);
  }
}

TEST_CASE("conic fit") {
  std::vector<Point2> circle;
  for (int i = 0; i < 5; ++i) circle.push_back({std::cos(1.1 * i + 0.2), std::sin(1.1 * i + 0.2)});
  const FittedConic fc = fit_conic(circle);
  CHECK(fc.residual <= 1e-12);
  CHECK(conic_distance(fc.conic, GeneralConic(Eigen::Vector3d(1, 1, -1).asDiagonal())) <= 1e-12);
  CHECK_THROWS_AS(fit_conic({{0, 0}, {1, 1}, {2, 0}}), DomainError);
  CHECK_THROWS_AS(fit_conic({{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}), DegenerateError);
  CHECK(symmetry_complete({{1, 2}}).size() == 4);
}

TEST_CASE("fits of the n = 5 grid") {
  const ConfocalFamily f(4, 1);
  const PonceletPolygon poly = build_polygon(f, 0.0, 5, 1, 0.0);
  const auto sets = grid_sets(poly);
  const FittedConic p1 = fit_grid_set(find_set(sets, SetKind::P, 1), f);
  CHECK(p1.residual <= 1e-8);
  const Confocality c1 = confocality_residual(f, p1);
  CHECK(c1.value() <= 1e-6);
  CHECK_FALSE(c1.hyperbola);
  CHECK(c1.pencil_ratio <= 1e-8);

  const FittedConic q1 = fit_grid_set(find_set(sets, SetKind::Q, 1), f);
  CHECK(q1.residual <= 1e-8);
  const Confocality cq = confocality_residual(f, q1);
  CHECK(cq.hyperbola);
  CHECK(cq.value() <= 1e-6);
  CHECK(cq.lambda > -4.0);
  CHECK(cq.lambda < -1.0);

  // With x0 = 0 the set Q_0 lies on the major axis beyond the foci.
  const Confocality q0 = confocality_residual(f, fit_grid_set(find_set(sets, SetKind::Q, 0), f));
  CHECK(q0.degenerate_member);
  CHECK(q0.lambda == -1.0);
}

TEST_CASE("confocality residual") {
  const ConfocalFamily f(4, 1);
  const Confocality m = confocality_residual(f, {to_general(ConfocalConic(f, 5)), 0.0});
  CHECK(m.value() <= 1e-15);
  CHECK(m.lambda == doctest::Approx(5.0));
  const Confocality unit = confocality_residual(f, {GeneralConic(Eigen::Vector3d(1, 1, -1).asDiagonal()), 0.0});
  CHECK(unit.focal_gap == doctest::Approx(0.75));
}

TEST_CASE("Ivory equivalence of grid sets") {
  const ConfocalFamily f(4, 1);
  for (int k : {1, 2}) {
    const auto sets = grid_sets(build_polygon(f, 0.0, 5, k, 0.0));
    const GridSet& p1 = find_set(sets, SetKind::P, 1);
    CHECK(equivalence_gap(f, p1, p1) <= 1e-15);
    CHECK(equivalence_gap(f, p1, find_set(sets, SetKind::P, 2)) <= 1e-8);
    CHECK(equivalence_gap(f, find_set(sets, SetKind::Q, 0), find_set(sets, SetKind::Q, 2)) <= 1e-8);
  }
  const auto sets = grid_sets(build_polygon(f, 0.0, 5, 1, 0.0));
  const Point2 s = equivalence_signs(find_set(sets, SetKind::P, 1), find_set(sets, SetKind::P, 2));
  CHECK(s.x1 == -1.0);
  CHECK(s.x2 == -1.0);
  CHECK_THROWS_AS(equivalence_gap(f, find_set(sets, SetKind::P, 1), find_set(sets, SetKind::Q, 1)), DomainError);
}

TEST_CASE("grid chart coordinates") {
  const ConfocalFamily f(4, 1);
  for (int n : {5, 7}) {
    const PonceletPolygon poly = build_polygon(f, 0.0, n, 1, 0.0);
    const CanonicalChart chart = build_chart(f, poly.lambda_caustic, 4096);
    const auto coords = grid_xy_coords(poly, chart);
    CHECK(coords.size() == static_cast<std::size_t>(n * (n + 1) / 2));
    for (const GridCoordinate& c : coords) {
      const double m = c.index;
      const double y = m / (2.0 * n);
      CHECK(std::abs(c.y - y) <= 1e-9);
      CHECK(std::abs(unit_difference(c.x, y + static_cast<double>(c.j) / n)) <= 1e-9);
      if (c.index == 0) CHECK(c.y == 0.0);
      if (n == 5 && c.index == 1 && c.j == 0) {
        CHECK(c.x == doctest::Approx(0.1));
        CHECK(c.y == doctest::Approx(0.1));
      }
    }
  }
}

TEST_CASE("normal angle and hyperbola separation") {
  const ConfocalConic g0(ConfocalFamily(4, 1), 0);
  CHECK(normal_angle_at(g0, 0.0) == doctest::Approx(0.0));
  CHECK(normal_angle_at(g0, pi / 2) == doctest::Approx(pi / 2));
  const ConfocalFamily f(4, 1);
  const GeneralConic other = to_general(ConfocalConic(f, -3.0));
  CHECK(sampled_separation(f, -2.0, other, 3.0, 3.0) > 0.1);
  const GeneralConic crossing = GeneralConic(Eigen::Vector3d(1, 1, -4).asDiagonal());
  CHECK(sampled_separation(f, -2.0, crossing, 3.0, 3.0) == 0.0);
}

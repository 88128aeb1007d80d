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

#include "poncelet/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "poncelet/canonical.hpp"
#include "poncelet/grid.hpp"
#include "poncelet/linespace.hpp"
#include "poncelet/projective.hpp"

namespace poncelet::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const char* const kCircleSkip = "skipped (degenerate family)";

struct SetFit {
  const GridSet* set;
  FittedConic fit;
  Confocality conf;
};

class Verifier {
 public:
  explicit Verifier(const RunConfig& cfg)
      : cfg_(cfg),
        family_(cfg.a1_sq, cfg.a2_sq),
        table_(family_, cfg.lambda_gamma),
        test_table_(perturbed_table(cfg)) {}

  VerificationReport run();

 private:
  static ConfocalConic perturbed_table(const RunConfig& cfg) {
    const double a = (cfg.a1_sq + cfg.lambda_gamma) * (1.0 + cfg.perturb);
    const double b = cfg.a2_sq + cfg.lambda_gamma;
    return ConfocalConic(ConfocalFamily(a, b), 0.0);
  }

  std::mt19937_64 rng(int salt) const { return std::mt19937_64(cfg_.seed * 1000003ULL + static_cast<unsigned>(salt)); }

  /// A line meeting the table away from tangency.
  OrientedLine random_line(std::mt19937_64& g) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double phi = kTwoPi * u(g);
    const double h = support_function(table_, phi);
    return {phi, (2.0 * u(g) - 1.0) * 0.95 * h};
  }

  void check(const std::string& name, const std::string& claim, Bound bound, const std::function<double()>& measure) {
    const double tol = cfg_.tolerance(name);
    try {
      report_.add(evaluate_check(name, claim, measure(), tol, bound));
    } catch (const std::exception& e) {
      report_.add(failed_check(name, claim, tol, e.what()));
    }
  }
  void skip(const std::string& name, const std::string& claim, const std::string& why) {
    report_.add(skipped_check(name, claim, why));
  }
  void focal_check(const std::string& name, const std::string& claim, Bound bound, const std::function<double()>& m) {
    if (family_.is_circle()) skip(name, claim, kCircleSkip);
    else check(name, claim, bound, m);
  }
  /// Runs a check that needs the polygon, failing it when the polygon could not be built.
  void grid_check(const std::string& name, const std::string& claim, Bound bound, const std::function<double()>& m,
                  bool needs_foci = false) {
    if (needs_foci && family_.is_circle()) return skip(name, claim, kCircleSkip);
    if (!polygon_) return report_.add(failed_check(name, claim, cfg_.tolerance(name), polygon_error_));
    check(name, claim, bound, m);
  }

  void billiard_checks();
  void chart_checks();
  void grid_checks();
  void projective_checks();

  const RunConfig& cfg_;
  ConfocalFamily family_;
  ConfocalConic table_;
  ConfocalConic test_table_;
  VerificationReport report_;

  std::optional<PonceletPolygon> polygon_;
  std::optional<CanonicalChart> chart_;
  std::string polygon_error_;
  std::vector<GridSet> sets_;
  std::vector<SetFit> fits_;
};

void Verifier::billiard_checks() {
  check("caustic_invariance", "reflection in a confocal ellipse preserves the caustic parameter of a line",
        Bound::AtMost, [&] {
          auto g = rng(1);
          double worst = 0.0;
          for (int i = 0; i < 10000; ++i) {
            const OrientedLine l = random_line(g);
            const double d = caustic_parameter(family_, reflect(l, table_)) - caustic_parameter(family_, l);
            worst = std::max(worst, std::abs(d) / family_.a1_sq());
          }
          return worst;
        });
  check("measure_preservation", "the billiard map preserves the area form dp dphi (|det J - 1|)", Bound::AtMost, [&] {
    auto g = rng(2);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(jacobian_det(random_line(g), table_) - 1.0));
    return worst;
  });
  check("reversibility", "reflecting the reversed reflected line gives the reversed line", Bound::AtMost, [&] {
    auto g = rng(3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const OrientedLine l = random_line(g);
      const OrientedLine back = reflect(reflect(l, table_).reversed(), table_);
      worst = std::max(worst, line_distance(back, l.reversed(), family_.scale()));
    }
    return worst;
  });
  focal_check("focal_mirror_identity",
              "for consecutive chords, mirrored foci satisfy |F1'F2| = |F1F2'| (relative to a1)", Bound::AtMost, [&] {
                auto g = rng(4);
                double worst = 0.0;
                for (int i = 0; i < 1000; ++i) {
                  const OrientedLine l = random_line(g);
                  const Chord first = chord(l, table_);
                  const Chord second = chord(reflect(l, table_), table_);
                  worst = std::max(worst, focal_mirror_gap(first, second, family_) / family_.scale());
                }
                return worst;
              });
  focal_check("focal_mirror_negative_control",
              "turning the outgoing chord by 1e-3 rad breaks the mirrored-foci identity (smallest gap)", Bound::Above,
              [&] {
                auto g = rng(5);
                double least = kInf;
                for (int i = 0; i < 200; ++i) {
                  const OrientedLine l = random_line(g);
                  const Chord first = chord(l, table_);
                  const OrientedLine r = reflect(l, table_);
                  const Point2 y = first.exit;
                  const double phi = r.phi + 1e-3;
                  const OrientedLine turned{phi, dot(y, Point2{std::cos(phi), std::sin(phi)})};
                  const Chord second = chord(turned, table_);
                  least = std::min(least, focal_mirror_gap(first, second, family_) / family_.scale());
                }
                return least;
              });
  check("commutation", "billiard maps of two confocal tables commute", Bound::AtMost, [&] {
    const ConfocalConic outer(family_, cfg_.lambda_gamma + 1.25 * family_.a1_sq());
    auto g = rng(6);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const OrientedLine l = random_line(g);
      const OrientedLine ab = reflect(reflect(l, table_), outer);
      const OrientedLine ba = reflect(reflect(l, outer), table_);
      worst = std::max(worst, line_distance(ab, ba, family_.scale()));
    }
    return worst;
  });
  check("rotation_number_monotone", "the rotation number decreases strictly with the caustic parameter (least drop)",
        Bound::Above, [&] {
          const double lo = -family_.a2_sq() + 1e-6 * family_.a1_sq();
          const double hi = cfg_.lambda_gamma - 1e-6 * family_.a1_sq();
          double prev = kInf;
          double least = kInf;
          for (int i = 0; i <= 12; ++i) {
            const double c = rotation_number(family_, lo + (hi - lo) * i / 12.0, cfg_.lambda_gamma, cfg_.resolution).c;
            if (i > 0) least = std::min(least, prev - c);
            prev = c;
          }
          return least;
        });
  focal_check("elliptic_coords_round_trip", "elliptic coordinates invert back to the point (relative to a1)",
              Bound::AtMost, [&] {
                auto g = rng(7);
                std::uniform_real_distribution<double> u(-3.0 * family_.scale(), 3.0 * family_.scale());
                double worst = 0.0;
                for (int i = 0; i < 1000; ++i) {
                  const Point2 p{u(g), u(g)};
                  const Point2 q = from_elliptic(family_, elliptic_coords(family_, p),
                                                 {p.x1 < 0.0 ? -1 : 1, p.x2 < 0.0 ? -1 : 1});
                  worst = std::max(worst, distance(p, q) / family_.scale());
                }
                return worst;
              });
  focal_check("ivory_preserves_coordinates",
              "the Ivory affinity between confocal ellipses keeps the hyperbola coordinate (relative to a1^2)",
              Bound::AtMost, [&] {
                auto g = rng(8);
                std::uniform_real_distribution<double> u(0.0, 1.0);
                const double a1 = family_.a1_sq(), a2 = family_.a2_sq();
                double worst = 0.0;
                for (int i = 0; i < 1000; ++i) {
                  const double lam = -a2 + (0.01 + 2.0 * u(g)) * a1;
                  const double mu = -a2 + (0.01 + 2.0 * u(g)) * a1;
                  const double l1 = -a1 + (0.02 + 0.96 * u(g)) * (a1 - a2);
                  const Point2 p = from_elliptic(family_, {l1, lam}, {u(g) < 0.5 ? -1 : 1, u(g) < 0.5 ? -1 : 1});
                  const EllipticCoords e = elliptic_coords(family_, ivory_map(family_, lam, mu, p));
                  worst = std::max({worst, std::abs(e.lambda1 - l1) / a1, std::abs(e.lambda2 - mu) / a1});
                }
                return worst;
              });
}

void Verifier::chart_checks() {
  grid_check("chart_shift_spread", "each billiard map is a constant shift in the caustic chart (spread of shifts)",
             Bound::AtMost, [&] {
               auto g = rng(9);
               std::uniform_real_distribution<double> u(0.0, kTwoPi);
               std::vector<double> shifts;
               for (int i = 0; i < 1000; ++i) {
                 const double phi = u(g);
                 const double next = map_on_caustic(chart_->caustic(), table_, phi);
                 shifts.push_back(wrap_unit(chart_->eval(next) - chart_->eval(phi)));
               }
               double lo = kInf, hi = -kInf;
               for (double s : shifts) {
                 const double d = unit_difference(s, shifts.front());
                 lo = std::min(lo, d);
                 hi = std::max(hi, d);
               }
               return hi - lo;
             });
  grid_check("chart_central_symmetry", "the chart advances by exactly 1/2 under phi -> phi + pi", Bound::AtMost, [&] {
    auto g = rng(10);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double phi = u(g);
      worst = std::max(worst, std::abs(wrap_unit(chart_->eval(phi + std::numbers::pi) - chart_->eval(phi)) - 0.5));
    }
    return worst;
  });
  grid_check("closure", "trajectories tangent to the k/n caustic close after n reflections from any start",
             Bound::AtMost, [&] {
               auto g = rng(11);
               std::uniform_real_distribution<double> u(0.0, kTwoPi);
               double worst = 0.0;
               for (int s = 0; s < 100; ++s) {
                 const OrientedLine start = tangent_line(chart_->caustic(), u(g));
                 OrientedLine l = start;
                 for (int i = 0; i < cfg_.n; ++i) l = reflect(l, table_);
                 worst = std::max(worst, line_distance(start, l, family_.scale()));
               }
               return worst;
             });
  grid_check("string_constancy", "the tight string around the caustic has the same length from every table point",
             Bound::AtMost, [&] {
               double lo = kInf, hi = -kInf;
               for (int i = 0; i < 64; ++i) {
                 const double len = string_length_at(chart_->caustic(), ellipse_point(table_, 0.1 + kTwoPi * i / 64));
                 lo = std::min(lo, len);
                 hi = std::max(hi, len);
               }
               return hi - lo;
             });
  grid_check("graves_hausdorff", "the string construction traces the confocal table (radial distance)",
             Bound::AtMost, [&] {
               const double len = string_length(family_, chart_->caustic().lambda(), cfg_.lambda_gamma);
               double worst = 0.0;
               for (const Point2& p : string_curve(family_, chart_->caustic().lambda(), len, 64)) {
                 const double th = std::atan2(p.x2, p.x1);
                 const double c = std::cos(th), s = std::sin(th);
                 const double r = 1.0 / std::sqrt(c * c / table_.axis1_sq() + s * s / table_.axis2_sq());
                 worst = std::max(worst, std::abs(norm(p) - r));
               }
               return worst;
             });
  grid_check("orthogonality",
             "the infinitesimal quadrilateral of tangents at neighbouring table points has diagonal pq orthogonal "
             "to the table (|cos|)",
             Bound::AtMost, [&] {
               double worst = 0.0;
               for (int i = 0; i < 100; ++i) {
                 worst = std::max(worst, orthogonality_gap(chart_->caustic(), test_table_, 0.05 + kTwoPi * i / 100));
               }
               return worst;
             });
}

void Verifier::grid_checks() {
  const int n = cfg_.n;
  std::vector<const SetFit*> p_fits, q_fits;
  for (const SetFit& f : fits_) (f.set->kind == SetKind::P ? p_fits : q_fits).push_back(&f);

  grid_check("polygon_vertices_on_table", "polygon vertices lie on the table", Bound::AtMost, [&] {
    double worst = 0.0;
    for (const Point2& v : polygon_->vertices) worst = std::max(worst, std::abs(evaluate_confocal(table_, v)));
    return worst;
  });
  grid_check("grid_counts", "n(n+1)/2 grid points in (n+1)/2 P sets of n and n Q sets of (n+1)/2 (violations)",
             Bound::AtMost, [&] {
               int bad = 0;
               std::vector<Point2> distinct;
               int p_sets = 0, q_sets = 0;
               for (const GridSet& s : sets_) {
                 if (s.kind == SetKind::P) {
                   ++p_sets;
                   if (static_cast<int>(s.points.size()) != n) ++bad;
                   for (const GridPoint& g : s.points) {
                     const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const Point2& q) {
                       return distance(q, g.point) <= 1e-9 * family_.scale();
                     });
                     if (!seen) distinct.push_back(g.point);
                   }
                 } else {
                   ++q_sets;
                   if (static_cast<int>(s.points.size()) != (n + 1) / 2) ++bad;
                 }
               }
               if (p_sets != (n + 1) / 2) ++bad;
               if (q_sets != n) ++bad;
               if (static_cast<int>(distinct.size()) != n * (n + 1) / 2) ++bad;
               return static_cast<double>(bad);
             });
  grid_check("p_sets_fit_residual", "each P set lies on a conic (relative singular value)", Bound::AtMost, [&] {
    double worst = 0.0;
    for (const SetFit* f : p_fits) worst = std::max(worst, f->fit.residual);
    return worst;
  });
  grid_check("p_sets_nested", "P-set ellipses are nested outward with the index (least parameter step)", Bound::Above,
             [&] {
               double least = kInf;
               for (std::size_t i = 0; i < p_fits.size(); ++i) {
                 if (p_fits[i]->conf.hyperbola) return -kInf;
                 if (i > 0) least = std::min(least, p_fits[i]->conf.lambda - p_fits[i - 1]->conf.lambda);
               }
               return least;
             });
  grid_check("p_sets_rotation_number", "the ellipse through P_m carries trajectories of rotation number m/n",
             Bound::AtMost, [&] {
               double worst = 0.0;
               for (const SetFit* f : p_fits) {
                 if (f->set->index == 0) continue;
                 const ConfocalConic outer(family_, f->conf.lambda);
                 const double c = rotation_number(*chart_, outer).c;
                 worst = std::max(worst, std::abs(c - static_cast<double>(f->set->index) / n));
               }
               return worst;
             });
  grid_check("dual_pencil_rank",
             "dual conics of the grid loci lie in the dual pencil of the family (third singular value ratio)",
             Bound::AtMost, [&] {
               double worst = 0.0;
               for (const SetFit& f : fits_) {
                 if (family_.is_circle() && f.set->kind == SetKind::Q) continue;
                 if (!f.conf.degenerate_member) worst = std::max(worst, f.conf.pencil_ratio);
               }
               return worst;
             });
  grid_check("confocality",
             "grid loci and the table are confocal with the caustic (focal gap and misalignment)", Bound::AtMost, [&] {
               double worst = confocality_residual(family_, {to_general(test_table_), 0.0}).value();
               for (const SetFit& f : fits_) {
                 if (family_.is_circle() && f.set->kind == SetKind::Q) continue;
                 worst = std::max(worst, f.conf.value());
               }
               return worst;
             });
  grid_check("q_sets_fit_residual", "each Q set lies on a conic (relative singular value)", Bound::AtMost, [&] {
    double worst = 0.0;
    for (const SetFit* f : q_fits) worst = std::max(worst, f->fit.residual);
    return worst;
  }, true);
  grid_check("q_sets_hyperbolic", "every Q-set conic is a hyperbola (count of others)", Bound::AtMost, [&] {
    int bad = 0;
    for (const SetFit* f : q_fits) bad += f->conf.hyperbola ? 0 : 1;
    return static_cast<double>(bad);
  }, true);
  if (polygon_ && !family_.is_circle()) {
    // Sets mirrored in the x1 axis share a hyperbola; only distinct members are compared.
    std::vector<const SetFit*> distinct;
    for (const SetFit* f : q_fits) {
      if (f->conf.degenerate_member || !f->conf.hyperbola) continue;
      const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const SetFit* d) {
        return std::abs(d->conf.lambda - f->conf.lambda) <= 1e-9 * family_.a1_sq();
      });
      if (!seen) distinct.push_back(f);
    }
    if (distinct.size() < 2) {
      skip("q_sets_disjoint", "Q-set hyperbolas are pairwise disjoint inside the table's box",
           "skipped (fewer than two distinct hyperbolas)");
    } else {
      grid_check("q_sets_disjoint", "Q-set hyperbolas are pairwise disjoint inside the table's box (least separation)",
                 Bound::Above, [&] {
                   const double w = std::sqrt(table_.axis1_sq());
                   const double h = std::sqrt(table_.axis2_sq());
                   double least = kInf;
                   for (const SetFit* a : distinct) {
                     for (const SetFit* b : distinct) {
                       if (a == b) continue;
                       least = std::min(least, sampled_separation(family_, a->conf.lambda, b->fit.conic, w, h));
                     }
                   }
                   return least;
                 });
    }
  } else {
    grid_check("q_sets_disjoint", "Q-set hyperbolas are pairwise disjoint inside the table's box", Bound::Above,
               [] { return 0.0; }, true);
  }
  grid_check("grid_coordinates", "the grid point where sides i and i+m meet has chart coordinates (x0 + m/2n + i/n, m/2n)",
             Bound::AtMost, [&] {
               double worst = 0.0;
               for (const GridCoordinate& c : grid_xy_coords(*polygon_, *chart_)) {
                 const double ex = polygon_->x0 + c.index / (2.0 * n) + static_cast<double>(c.j) / n;
                 const double ey = c.index / (2.0 * n);
                 worst = std::max({worst, std::abs(unit_difference(c.x, ex)), std::abs(c.y - ey)});
               }
               return worst;
             });
  auto equivalence = [&](SetKind kind) {
    double worst = 0.0;
    for (const GridSet& a : sets_) {
      for (const GridSet& b : sets_) {
        if (a.kind == kind && b.kind == kind) worst = std::max(worst, equivalence_gap(family_, a, b));
      }
    }
    return worst;
  };
  grid_check("equivalence_p_sets", "P sets map onto each other by the signed Ivory affinity", Bound::AtMost,
             [&] { return equivalence(SetKind::P); }, true);
  grid_check("equivalence_q_sets", "Q sets map onto each other by the signed Ivory affinity", Bound::AtMost,
             [&] { return equivalence(SetKind::Q); }, true);
  grid_check("coordinate_net_right_angle",
             "Q-set hyperbolas cross the confocal ellipses at right angles (|cos| of the gradients)", Bound::AtMost,
             [&] {
               double worst = 0.0;
               for (const SetFit* f : q_fits) {
                 if (f->conf.degenerate_member) continue;
                 for (const Point2& p : f->set->finite_points()) {
                   const double l2 = elliptic_coords(family_, p).lambda2;
                   const Point2 ge{p.x1 / (family_.a1_sq() + l2), p.x2 / (family_.a2_sq() + l2)};
                   const Point2 gh = f->fit.conic.gradient(p);
                   worst = std::max(worst, std::abs(dot(ge, gh)) / (norm(ge) * norm(gh)));
                 }
               }
               return worst;
             },
             true);
}

void Verifier::projective_checks() {
  if (!polygon_) {
    for (const char* name : {"projective_closure", "projective_rotation_invariance"}) {
      report_.add(failed_check(name, "projective images of the closing pair", cfg_.tolerance(name), polygon_error_));
    }
    return;
  }
  const GeneralConic gamma = to_general(chart_->caustic());
  const GeneralConic Gamma = to_general(table_);
  const double c0 = rotation_number(*chart_, table_).c;
  std::vector<std::optional<ClosureResult>> results;
  std::string error;
  try {
    for (int i = 0; i < 20; ++i) {
      const ProjectiveMap t = random_projective_map(cfg_.seed * 7919ULL + static_cast<unsigned>(i), Gamma);
      results.push_back(closure_test(apply_map(t, gamma), apply_map(t, Gamma), 2 * cfg_.n + 1, 20,
                                     cfg_.seed + static_cast<unsigned>(i), cfg_.resolution));
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  grid_check("projective_closure",
             "projective images of the pair close up after n steps in their own frame (relative defect)",
             Bound::AtMost, [&] {
               if (!error.empty()) throw Error(error);
               double worst = 0.0;
               for (const auto& r : results) {
                 if (!r || r->n != cfg_.n || r->k != cfg_.k) return kInf;
                 worst = std::max(worst, r->defect);
               }
               return worst;
             });
  grid_check("projective_rotation_invariance", "the rotation number of the pair is projectively invariant",
             Bound::AtMost, [&] {
               if (!error.empty()) throw Error(error);
               double worst = 0.0;
               for (const auto& r : results) {
                 if (!r) return kInf;
                 worst = std::max(worst, std::abs(r->rotation_number - c0));
               }
               return worst;
             });
}

VerificationReport Verifier::run() {
  try {
    polygon_ = build_polygon(family_, cfg_.lambda_gamma, cfg_.n, cfg_.k, cfg_.x0, cfg_.resolution);
    chart_.emplace(family_, polygon_->lambda_caustic, cfg_.resolution);
    sets_ = grid_sets(*polygon_);
    for (const GridSet& s : sets_) {
      if (family_.is_circle() && s.kind == SetKind::Q) continue;
      const FittedConic fit = fit_grid_set(s, family_);
      fits_.push_back({&s, fit, confocality_residual(family_, fit)});
    }
  } catch (const std::exception& e) {
    polygon_.reset();
    polygon_error_ = e.what();
  }
  billiard_checks();
  chart_checks();
  grid_checks();
  projective_checks();
  return report_;
}

}  // namespace

VerificationReport run_verify(const RunConfig& config) { return Verifier(config).run(); }

}  // namespace poncelet::cli

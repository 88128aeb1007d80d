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

#include "poncelet/cli/commands.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poncelet/canonical.hpp"
#include "poncelet/cli/output.hpp"
#include "poncelet/cli/verify.hpp"
#include "poncelet/grid.hpp"
#include "poncelet/linespace.hpp"

namespace poncelet::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

fs::path out_path(const RunConfig& cfg, const char* name) { return fs::path(cfg.out_dir) / name; }

std::vector<Point2> ellipse_polyline(const ConfocalConic& e, int count = 360) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(ellipse_point(e, 2.0 * kPi * i / count));
  return pts;
}

SvgCanvas table_canvas(const ConfocalConic& table) {
  const double w = std::sqrt(table.axis1_sq());
  const double h = std::sqrt(table.axis2_sq());
  return SvgCanvas(-w, w, -h, h);
}

/// JSON numbers at full precision, null for non-finite values.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return json::parse(format_double(v));
}

const char* kind_name(SetKind k) { return k == SetKind::P ? "P" : "Q"; }

}  // namespace

void cmd_grid(const RunConfig& cfg, std::ostream& out) {
  const ConfocalFamily family(cfg.a1_sq, cfg.a2_sq);
  const ConfocalConic table(family, cfg.lambda_gamma);
  const PonceletPolygon poly = build_polygon(family, cfg.lambda_gamma, cfg.n, cfg.k, cfg.x0, cfg.resolution);
  const CanonicalChart chart = build_chart(family, poly.lambda_caustic, cfg.resolution);
  const std::vector<GridSet> sets = grid_sets(poly);
  const std::vector<GridCoordinate> coords = grid_xy_coords(poly, chart);

  if (cfg.wants("csv")) {
    std::string csv = "kind,index,j,x1,x2,chart_x,chart_y\n";
    for (const GridCoordinate& c : coords) {
      csv += std::string(kind_name(c.kind)) + "," + std::to_string(c.index) + "," + std::to_string(c.j) + "," +
             format_double(c.point.x1) + "," + format_double(c.point.x2) + "," + format_double(c.x) + "," +
             format_double(c.y) + "\n";
    }
    write_atomic(out_path(cfg, "grid.csv"), csv);
  }

  if (cfg.wants("json")) {
    json doc;
    doc["family"] = {{"a1sq", num(cfg.a1_sq)}, {"a2sq", num(cfg.a2_sq)}};
    doc["lambda_table"] = num(cfg.lambda_gamma);
    doc["lambda_caustic"] = num(poly.lambda_caustic);
    doc["n"] = cfg.n;
    doc["k"] = cfg.k;
    doc["x0"] = num(cfg.x0);
    json jsets = json::array();
    for (const GridSet& s : sets) {
      json js;
      js["kind"] = kind_name(s.kind);
      js["index"] = s.index;
      js["points"] = s.points.size();
      if (s.kind == SetKind::Q && family.is_circle()) {
        js["status"] = "skipped (degenerate family)";
      } else {
        const FittedConic fit = fit_grid_set(s, family);
        const Confocality conf = confocality_residual(family, fit);
        js["status"] = "fitted";
        js["lambda"] = num(conf.lambda);
        js["conic"] = conf.degenerate_member ? "degenerate" : (conf.hyperbola ? "hyperbola" : "ellipse");
        js["fit_residual"] = num(fit.residual);
        js["focal_gap"] = num(conf.focal_gap);
        js["misalignment"] = num(conf.misalignment);
        js["pencil_ratio"] = num(conf.pencil_ratio);
      }
      jsets.push_back(js);
    }
    doc["sets"] = jsets;
    json gaps = json::array();
    for (std::size_t a = 0; !family.is_circle() && a < sets.size(); ++a) {
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        if (sets[a].kind != sets[b].kind) continue;
        gaps.push_back({{"kind", kind_name(sets[a].kind)},
                        {"from", sets[a].index},
                        {"to", sets[b].index},
                        {"gap", num(equivalence_gap(family, sets[a], sets[b]))}});
      }
    }
    doc["equivalence"] = gaps;
    write_atomic(out_path(cfg, "grid_conics.json"), doc.dump(2) + "\n");
  }

  if (cfg.wants("svg")) {
    SvgCanvas svg = table_canvas(table);
    svg.polyline(ellipse_polyline(table), "#000000", 2.0, true);
    svg.polyline(ellipse_polyline(chart.caustic()), "#555555", 1.5, true);
    for (const OrientedLine& side : poly.side_lines) {
      const Chord c = chord(side, table);
      svg.segment(c.entry, c.exit, "#999999", 1.0);
    }
    for (const GridSet& s : sets) {
      const double r = s.kind == SetKind::P ? 4.0 : 2.5;
      const int color = s.kind == SetKind::P ? s.index : s.index + (cfg.n + 1) / 2;
      for (const GridPoint& g : s.points) {
        if (!g.at_infinity) svg.dot(g.point, r, palette(color));
      }
    }
    write_atomic(out_path(cfg, "grid.svg"), svg.str());
  }
  out << "grid: n=" << cfg.n << " k=" << cfg.k << " lambda_caustic=" << format_double(poly.lambda_caustic) << ", "
      << coords.size() << " points\n";
}

VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& out, bool color) {
  VerificationReport report = run_verify(cfg);
  out << report.to_text(color);
  if (cfg.wants("json")) write_atomic(out_path(cfg, "verify_report.json"), report.to_json());
  return report;
}

void cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  const ConfocalFamily family(cfg.a1_sq, cfg.a2_sq);
  const ConfocalConic table(family, cfg.lambda_gamma);
  std::vector<double> lambdas = cfg.lambdas;
  if (lambdas.empty()) {
    const double lo = -cfg.a1_sq;
    const double span = cfg.lambda_gamma - lo;
    for (int i = 1; i <= 8; ++i) lambdas.push_back(lo + span * i / 9.0);
    if (!family.is_circle()) lambdas.push_back(-cfg.a2_sq);
    std::sort(lambdas.begin(), lambdas.end());
  }
  const std::vector<PortraitCurve> curves = phase_portrait(family, cfg.lambda_gamma, lambdas, cfg.samples);

  if (cfg.wants("csv")) {
    std::string csv = "lambda,branch,phi,p\n";
    for (const PortraitCurve& c : curves) {
      for (const auto* branch : {&c.upper, &c.lower}) {
        const char* name = branch == &c.upper ? "upper" : "lower";
        for (const PortraitSample& s : *branch) {
          csv += format_double(c.lambda) + "," + name + "," + format_double(s.phi) + "," + format_double(s.p) + "\n";
        }
      }
    }
    write_atomic(out_path(cfg, "portrait.csv"), csv);
  }

  if (cfg.wants("svg")) {
    const double hmax = std::sqrt(table.axis1_sq());
    SvgCanvas svg(0.0, 2.0 * kPi, -hmax, hmax);
    std::vector<Point2> top, bottom;
    for (int i = 0; i <= 720; ++i) {
      const double phi = 2.0 * kPi * i / 720;
      const double h = support_function(table, phi);
      top.push_back({phi, h});
      bottom.push_back({phi, -h});
    }
    svg.polyline(top, "#000000", 1.5);
    svg.polyline(bottom, "#000000", 1.5);
    // Break polylines where samples are missing (clipped or imaginary).
    const double gap = 1.5 * 2.0 * kPi / cfg.samples;
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
      for (const auto* branch : {&curves[ci].upper, &curves[ci].lower}) {
        std::vector<Point2> run;
        for (const PortraitSample& s : *branch) {
          if (!run.empty() && s.phi - run.back().x1 > gap) {
            svg.polyline(run, palette(static_cast<int>(ci)), 1.0);
            run.clear();
          }
          run.push_back({s.phi, s.p});
        }
        svg.polyline(run, palette(static_cast<int>(ci)), 1.0);
      }
    }
    write_atomic(out_path(cfg, "portrait.svg"), svg.str());
  }
  out << "portrait: " << curves.size() << " curves\n";
}

double cmd_rotnum(const RunConfig& cfg, std::ostream& out) {
  const ConfocalFamily family(cfg.a1_sq, cfg.a2_sq);
  const double c = rotation_number(family, cfg.caustic_or_default(), cfg.lambda_gamma, cfg.resolution).c;
  out << format_double(c) << "\n";
  return c;
}

void cmd_string(const RunConfig& cfg, std::ostream& out) {
  const ConfocalFamily family(cfg.a1_sq, cfg.a2_sq);
  const double lc = cfg.caustic_or_default();
  const double length = cfg.length ? *cfg.length : string_length(family, lc, cfg.lambda_gamma);
  const std::vector<Point2> curve = string_curve(family, lc, length, cfg.samples);

  if (cfg.wants("csv")) {
    std::string csv = "x1,x2\n";
    for (const Point2& p : curve) csv += format_double(p.x1) + "," + format_double(p.x2) + "\n";
    write_atomic(out_path(cfg, "string.csv"), csv);
  }
  if (cfg.wants("svg")) {
    double w = 0.0, h = 0.0;
    for (const Point2& p : curve) {
      w = std::max(w, std::abs(p.x1));
      h = std::max(h, std::abs(p.x2));
    }
    SvgCanvas svg(-w, w, -h, h);
    svg.polyline(ellipse_polyline(ConfocalConic(family, lc)), "#555555", 1.5, true);
    svg.polyline(curve, palette(0), 2.0, true);
    write_atomic(out_path(cfg, "string.svg"), svg.str());
  }
  out << "string: length=" << format_double(length) << ", " << curve.size() << " points\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poncelet polygons and grids in confocal billiards", "poncelet"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  std::vector<std::string> tolerance_overrides;

  std::vector<CLI::App*> subs{
      app.add_subcommand("grid", "Write the Poncelet grid (CSV, fitted conics JSON, SVG)"),
      app.add_subcommand("verify", "Run every numerical check and report"),
      app.add_subcommand("portrait", "Write invariant curves of the billiard map in (phi, p)"),
      app.add_subcommand("rotnum", "Print the rotation number of a caustic in the table"),
      app.add_subcommand("string", "Write the string construction of the table"),
  };
  for (CLI::App* sub : subs) {
    sub->add_option("--config", config_path, "Config file with 'key = value' lines");
    for (const std::string& key : config_keys()) {
      sub->add_option_function<std::string>("--" + key, [&flags, key](const std::string& v) { flags[key] = v; });
    }
    sub->add_option("--tolerance", tolerance_overrides, "Override a check tolerance, name=value")->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    RawConfig raw;
    if (!config_path.empty()) raw = read_config_file(config_path);
    for (const auto& [k, v] : flags) raw[k] = v;
    for (const std::string& t : tolerance_overrides) {
      const auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError("tolerance: expected name=value, got '" + t + "'");
      if (!default_tolerances().contains(t.substr(0, eq))) {
        throw ConfigError("tolerance: unknown check '" + t.substr(0, eq) + "'");
      }
      raw["tolerance." + t.substr(0, eq)] = t.substr(eq + 1);
    }
    cfg = build_config(raw);
  } catch (const ConfigError& e) {
    err << "poncelet: config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const bool color = isatty(fileno(stdout)) != 0 && std::getenv("PONCELET_NO_COLOR") == nullptr;
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "grid") cmd_grid(cfg, out);
    else if (name == "verify") {
      const VerificationReport report = cmd_verify(cfg, out, color);
      if (!report.passed()) {
        err << "poncelet: verification failed:";
        for (const std::string& f : report.failures()) err << " " << f;
        err << "\n";
        return kExitFailure;
      }
    } else if (name == "portrait") cmd_portrait(cfg, out);
    else if (name == "rotnum") cmd_rotnum(cfg, out);
    else cmd_string(cfg, out);
  } catch (const std::exception& e) {
    err << "poncelet: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace poncelet::cli

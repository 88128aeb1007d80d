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

#include "poncelet/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace poncelet::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + value + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& value) {
  long long v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return v;
}

bool known_key(const std::string& key) {
  if (key.rfind("tolerance.", 0) == 0) return default_tolerances().count(key.substr(10)) > 0;
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

bool RunConfig::wants(std::string_view format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

double RunConfig::tolerance(const std::string& check) const {
  const auto it = tolerances.find(check);
  if (it != tolerances.end()) return it->second;
  return default_tolerances().at(check);
}

double RunConfig::caustic_or_default() const {
  return lambda_caustic ? *lambda_caustic : 0.5 * (-a2_sq + lambda_gamma);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"a1sq", "a2sq", "lambda-gamma", "n", "k", "x0", "resolution", "seed",
                                             "out-dir", "format", "perturb", "lambdas", "lambda-caustic", "samples",
                                             "length"};
  return keys;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol{
      {"caustic_invariance", 1e-10},
      {"chart_central_symmetry", 1e-10},
      {"chart_shift_spread", 1e-8},
      {"closure", 1e-9},
      {"commutation", 1e-9},
      {"confocality", 1e-6},
      {"coordinate_net_right_angle", 1e-6},
      {"dual_pencil_rank", 1e-8},
      {"elliptic_coords_round_trip", 1e-9},
      {"equivalence_p_sets", 1e-8},
      {"equivalence_q_sets", 1e-8},
      {"focal_mirror_identity", 1e-10},
      {"focal_mirror_negative_control", 1e-6},
      {"graves_hausdorff", 1e-6},
      {"grid_coordinates", 1e-9},
      {"grid_counts", 0.0},
      {"ivory_preserves_coordinates", 1e-10},
      {"measure_preservation", 1e-5},
      {"orthogonality", 1e-8},
      {"p_sets_fit_residual", 1e-8},
      {"p_sets_nested", 0.0},
      {"p_sets_rotation_number", 1e-8},
      {"polygon_vertices_on_table", 1e-9},
      {"projective_closure", 1e-7},
      {"projective_rotation_invariance", 1e-8},
      {"q_sets_disjoint", 0.0},
      {"q_sets_fit_residual", 1e-8},
      {"q_sets_hyperbolic", 0.0},
      {"reversibility", 1e-9},
      {"rotation_number_monotone", 0.0},
      {"string_constancy", 1e-9},
  };
  return tol;
}

RawConfig parse_config_text(std::string_view text, const std::string& origin) {
  RawConfig raw;
  std::stringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    raw[key] = value;
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

RunConfig build_config(const RawConfig& raw) {
  RunConfig c;
  for (const auto& [key, value] : raw) {
    if (!known_key(key)) throw ConfigError("unknown key '" + key + "'");
    if (key == "a1sq") c.a1_sq = to_double(key, value);
    else if (key == "a2sq") c.a2_sq = to_double(key, value);
    else if (key == "lambda-gamma") c.lambda_gamma = to_double(key, value);
    else if (key == "n") c.n = static_cast<int>(to_integer(key, value));
    else if (key == "k") c.k = static_cast<int>(to_integer(key, value));
    else if (key == "x0") c.x0 = to_double(key, value);
    else if (key == "resolution") c.resolution = static_cast<int>(to_integer(key, value));
    else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw ConfigError("seed: must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out-dir") c.out_dir = value;
    else if (key == "format") c.formats = split(value, ',');
    else if (key == "perturb") c.perturb = to_double(key, value);
    else if (key == "lambdas") {
      c.lambdas.clear();
      for (const auto& item : split(value, ',')) c.lambdas.push_back(to_double(key, item));
    } else if (key == "lambda-caustic") c.lambda_caustic = to_double(key, value);
    else if (key == "samples") c.samples = static_cast<int>(to_integer(key, value));
    else if (key == "length") c.length = to_double(key, value);
    else c.tolerances[key.substr(10)] = to_double(key, value);
  }

  if (!(c.a2_sq > 0.0) || c.a1_sq < c.a2_sq) throw ConfigError("a1sq, a2sq: need a1sq >= a2sq > 0");
  const double tol = 1e-9 * c.a1_sq;
  if (!(c.lambda_gamma + c.a2_sq >= tol)) throw ConfigError("lambda-gamma: the table must be an ellipse (lambda > -a2sq)");
  if (c.n < 3 || c.n % 2 == 0) throw ConfigError("n: must be odd and at least 3");
  if (c.k < 1 || 2 * c.k >= c.n || std::gcd(c.k, c.n) != 1) throw ConfigError("k: need 1 <= k < n/2 and gcd(k, n) = 1");
  if (c.resolution < 64) throw ConfigError("resolution: must be at least 64");
  if (c.samples < 1) throw ConfigError("samples: must be positive");
  if (c.perturb < 0.0) throw ConfigError("perturb: must be non-negative");
  if (c.formats.empty()) throw ConfigError("format: no output format");
  for (const auto& f : c.formats) {
    if (f != "csv" && f != "json" && f != "svg") throw ConfigError("format: unknown format '" + f + "'");
  }
  for (double l : c.lambdas) {
    if (!(l > -c.a1_sq && l < c.lambda_gamma)) throw ConfigError("lambdas: each value must lie in (-a1sq, lambda-gamma)");
  }
  if (c.lambda_caustic) {
    const double l = *c.lambda_caustic;
    if (!(l + c.a2_sq >= tol && l < c.lambda_gamma)) {
      throw ConfigError("lambda-caustic: must name an ellipse inside the table");
    }
  }
  if (c.length && !(*c.length > 0.0)) throw ConfigError("length: must be positive");
  for (const auto& [name, value] : c.tolerances) {
    if (!(value >= 0.0)) throw ConfigError("tolerance." + name + ": must be non-negative");
  }
  if (c.out_dir.empty()) throw ConfigError("out-dir: empty path");
  return c;
}

}  // namespace poncelet::cli

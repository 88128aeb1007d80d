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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poncelet::cli {

/// Invalid configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double a1_sq = 4.0;
  double a2_sq = 1.0;
  double lambda_gamma = 0.0;
  int n = 5;
  int k = 1;
  double x0 = 0.0;
  int resolution = 4096;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::vector<std::string> formats{"csv", "json", "svg"};
  /// Relative stretch of the first axis of the table used by the negative
  /// control checks; 0 leaves the table confocal.
  double perturb = 0.0;
  /// Caustic parameters for `portrait`; empty picks a default fan.
  std::vector<double> lambdas;
  /// Caustic for `rotnum` and `string`; unset picks the midpoint of the
  /// elliptic range below the table.
  std::optional<double> lambda_caustic;
  int samples = 256;
  /// String length for `string`; unset uses the length that reproduces the table.
  std::optional<double> length;
  std::map<std::string, double> tolerances;

  bool wants(std::string_view format) const;
  double tolerance(const std::string& check) const;
  double caustic_or_default() const;
};

/// key -> raw value, as read from a file and the command line.
using RawConfig = std::map<std::string, std::string>;

/// Keys accepted in files and as --key flags (tolerances are tolerance.<check>).
const std::vector<std::string>& config_keys();
/// Check name -> default tolerance.
const std::map<std::string, double>& default_tolerances();

/// Parses `key = value` lines; '#' starts a comment. Unknown keys are rejected.
RawConfig parse_config_text(std::string_view text, const std::string& origin);
RawConfig read_config_file(const std::string& path);

/// Converts and validates against the library's preconditions.
RunConfig build_config(const RawConfig& raw);

}  // namespace poncelet::cli

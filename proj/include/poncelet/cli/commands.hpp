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

#include <ostream>

#include "poncelet/cli/config.hpp"
#include "poncelet/cli/report.hpp"

namespace poncelet::cli {

/// Exit codes of the tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitFailure = 3;

/// grid.csv, grid_conics.json and grid.svg in cfg.out_dir.
void cmd_grid(const RunConfig& cfg, std::ostream& out);
/// Prints the report and writes verify_report.json.
VerificationReport cmd_verify(const RunConfig& cfg, std::ostream& out, bool color);
/// portrait.csv and portrait.svg.
void cmd_portrait(const RunConfig& cfg, std::ostream& out);
/// Prints the rotation number of the caustic in the table.
double cmd_rotnum(const RunConfig& cfg, std::ostream& out);
/// string.csv and string.svg.
void cmd_string(const RunConfig& cfg, std::ostream& out);

/// Parses the command line and dispatches. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poncelet::cli

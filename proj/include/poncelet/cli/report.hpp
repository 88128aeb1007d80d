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

#include <optional>
#include <string>
#include <vector>

namespace poncelet::cli {

enum class Status { Pass, Fail, Skipped };

/// How a measurement is compared with its tolerance.
enum class Bound { AtMost, Above };

struct Check {
  std::string name;
  /// The property being checked, in words.
  std::string claim;
  /// Unset when the computation itself failed.
  std::optional<double> measured;
  double tolerance = 0.0;
  Bound bound = Bound::AtMost;
  Status status = Status::Fail;
  std::string note;
};

Check evaluate_check(std::string name, std::string claim, double measured, double tolerance,
                     Bound bound = Bound::AtMost);
Check skipped_check(std::string name, std::string claim, std::string reason);
Check failed_check(std::string name, std::string claim, double tolerance, std::string error);

class VerificationReport {
 public:
  void add(Check check);
  /// Checks sorted by name.
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::vector<std::string> failures() const;

  std::string to_json() const;
  std::string to_text(bool color) const;

 private:
  std::vector<Check> checks_;
};

const char* status_name(Status s);

}  // namespace poncelet::cli

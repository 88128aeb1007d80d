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

#include "poncelet/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "poncelet/cli/output.hpp"

namespace poncelet::cli {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "fail";
}

Check evaluate_check(std::string name, std::string claim, double measured, double tolerance, Bound bound) {
  Check c{std::move(name), std::move(claim), measured, tolerance, bound, Status::Fail, {}};
  const bool ok = bound == Bound::AtMost ? measured <= tolerance : measured > tolerance;
  c.status = std::isfinite(measured) && ok ? Status::Pass : Status::Fail;
  return c;
}

Check skipped_check(std::string name, std::string claim, std::string reason) {
  return {std::move(name), std::move(claim), std::nullopt, 0.0, Bound::AtMost, Status::Skipped, std::move(reason)};
}

Check failed_check(std::string name, std::string claim, double tolerance, std::string error) {
  return {std::move(name), std::move(claim), std::nullopt, tolerance, Bound::AtMost, Status::Fail, std::move(error)};
}

void VerificationReport::add(Check check) {
  const auto pos = std::upper_bound(checks_.begin(), checks_.end(), check,
                                    [](const Check& a, const Check& b) { return a.name < b.name; });
  checks_.insert(pos, std::move(check));
}

bool VerificationReport::passed() const {
  return std::none_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.status == Status::Fail; });
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (c.status == Status::Fail) out.push_back(c.name);
  }
  return out;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["status"] = passed() ? "pass" : "fail";
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["claim"] = c.claim;
    j["measured"] = c.measured && std::isfinite(*c.measured) ? nlohmann::ordered_json(*c.measured) : nullptr;
    j["tolerance"] = c.tolerance;
    j["bound"] = c.bound == Bound::AtMost ? "at_most" : "above";
    j["status"] = status_name(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    list.push_back(std::move(j));
  }
  doc["checks"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string VerificationReport::to_text(bool color) const {
  std::string out;
  std::size_t width = 0;
  for (const auto& c : checks_) width = std::max(width, c.name.size());
  for (const auto& c : checks_) {
    const char* tag = c.status == Status::Pass ? "PASS" : c.status == Status::Fail ? "FAIL" : "SKIP";
    const char* code = c.status == Status::Pass ? "\033[32m" : c.status == Status::Fail ? "\033[31m" : "\033[33m";
    out += color ? std::string(code) + tag + "\033[0m" : std::string(tag);
    out += "  " + c.name + std::string(width - c.name.size(), ' ');
    if (c.status == Status::Skipped) {
      out += "  " + c.note;
    } else {
      out += "  measured=" + (c.measured ? format_double(*c.measured, 6) : std::string("n/a"));
      out += (c.bound == Bound::AtMost ? "  <= " : "  > ") + format_double(c.tolerance, 6);
      if (!c.note.empty()) out += "  (" + c.note + ")";
    }
    out += "\n";
  }
  const auto failed = failures();
  out += passed() ? "all checks passed\n" : std::to_string(failed.size()) + " check(s) failed\n";
  return out;
}

}  // namespace poncelet::cli

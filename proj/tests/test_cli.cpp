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

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "poncelet/cli/commands.hpp"
#include "poncelet/cli/config.hpp"
#include "poncelet/cli/output.hpp"
#include "poncelet/cli/report.hpp"

using namespace poncelet::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "poncelet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("poncelet_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("config text parsing") {
  const RawConfig raw = parse_config_text("# comment\n a1sq = 9 \n\nn=7 # trailing\ntolerance.closure = 1e-8\n", "t");
  CHECK(raw.at("a1sq") == "9");
  CHECK(raw.at("n") == "7");
  const RunConfig cfg = build_config(raw);
  CHECK(cfg.a1_sq == 9.0);
  CHECK(cfg.n == 7);
  CHECK(cfg.tolerance("closure") == 1e-8);
  CHECK(cfg.tolerance("confocality") == 1e-6);
  CHECK_THROWS_AS(parse_config_text("bogus = 1\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n 5\n", "t"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("tolerance.nothing = 1\n", "t"), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(build_config({{"n", "4"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"n", "9"}, {"k", "3"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"a1sq", "1"}, {"a2sq", "2"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"lambda-gamma", "-1"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"n", "five"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"x0", "0.1abc"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"format", "png"}}), ConfigError);
  CHECK_THROWS_AS(build_config({{"lambdas", "-1,2"}}), ConfigError);
  const RunConfig cfg = build_config({{"format", "csv,svg"}, {"lambdas", "-1,-0.5"}});
  CHECK(cfg.wants("csv"));
  CHECK_FALSE(cfg.wants("json"));
  CHECK(cfg.lambdas.size() == 2);
  CHECK(cfg.caustic_or_default() == -0.5);
}

TEST_CASE("report ordering and json") {
  VerificationReport r;
  r.add(evaluate_check("zeta", "z", 0.5, 1.0));
  r.add(evaluate_check("alpha", "a", 2.0, 1.0));
  r.add(evaluate_check("mid", "m", 2.0, 1.0, Bound::Above));
  r.add(skipped_check("beta", "b", "skipped (degenerate family)"));
  CHECK(r.checks().front().name == "alpha");
  CHECK(r.checks().back().name == "zeta");
  CHECK_FALSE(r.passed());
  CHECK(r.failures() == std::vector<std::string>{"alpha"});
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["status"] == "fail");
  CHECK(j["checks"][1]["status"] == "skipped");
  CHECK(j["checks"][1]["measured"].is_null());
  CHECK(r.to_text(false).find("\x1b[") == std::string::npos);
  CHECK(r.to_text(true).find("\x1b[") != std::string::npos);
  CHECK(evaluate_check("nan", "n", std::nan(""), 1.0).status == Status::Fail);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({}).code == kExitConfig);
  CHECK(invoke({"verify", "--n", "4"}).code == kExitConfig);
  CHECK(invoke({"verify", "--bogus", "1"}).code == kExitConfig);
  CHECK(invoke({"verify", "--config", "/nonexistent/poncelet.conf"}).code == kExitConfig);
  CHECK(invoke({"verify", "--tolerance", "nothing=1"}).code == kExitConfig);
  // 4/9 is out of the bracket on this table.
  CHECK(invoke({"grid", "--n", "9", "--k", "4", "--out-dir", scratch_dir("bracket").string()}).code == kExitFailure);
}

TEST_CASE("config file and command line precedence") {
  const fs::path dir = scratch_dir("precedence");
  fs::create_directories(dir);
  std::ofstream(dir / "run.conf") << "n = 7\nk = 2\nformat = csv\n";
  const Result r = invoke({"grid", "--config", (dir / "run.conf").string(), "--k", "1", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("n=7 k=1") != std::string::npos);
  CHECK(fs::exists(dir / "grid.csv"));
  CHECK_FALSE(fs::exists(dir / "grid.svg"));
  CHECK(lines(slurp(dir / "grid.csv")).size() == 1 + 28);
}

TEST_CASE("grid outputs") {
  const fs::path a = scratch_dir("grid_a"), b = scratch_dir("grid_b");
  REQUIRE(invoke({"grid", "--out-dir", a.string()}).code == 0);
  REQUIRE(invoke({"grid", "--out-dir", b.string()}).code == 0);
  const auto csv = lines(slurp(a / "grid.csv"));
  CHECK(csv.front() == "kind,index,j,x1,x2,chart_x,chart_y");
  CHECK(csv.size() == 1 + 15);
  for (const char* name : {"grid.csv", "grid_conics.json", "grid.svg"}) CHECK(slurp(a / name) == slurp(b / name));
  const auto j = nlohmann::json::parse(slurp(a / "grid_conics.json"));
  CHECK(j["sets"].size() == 3 + 5);
  for (const auto& g : j["equivalence"]) CHECK(g["gap"].get<double>() <= 1e-8);
  CHECK(slurp(a / "grid.svg").rfind("<svg", 0) == 0);

  const fs::path c = scratch_dir("grid_circle");
  REQUIRE(invoke({"grid", "--n", "3", "--a1sq", "1", "--a2sq", "1", "--out-dir", c.string()}).code == 0);
  CHECK(lines(slurp(c / "grid.csv")).size() == 1 + 6);
}

TEST_CASE("portrait outputs") {
  const fs::path dir = scratch_dir("portrait");
  REQUIRE(invoke({"portrait", "--lambdas", "-1", "--samples", "8", "--out-dir", dir.string()}).code == 0);
  const auto rows = lines(slurp(dir / "portrait.csv"));
  CHECK(rows.front() == "lambda,branch,phi,p");
  CHECK(rows[1] == "-1,upper,0,1.7320508075688772");

  const fs::path circle = scratch_dir("portrait_circle");
  REQUIRE(invoke({"portrait", "--a1sq", "1", "--a2sq", "1", "--lambdas", "-0.5", "--samples", "8", "--format", "csv",
                  "--out-dir", circle.string()})
              .code == 0);
  const auto crow = lines(slurp(circle / "portrait.csv"));
  CHECK(crow.size() == 1 + 16);
  for (std::size_t i = 1; i < crow.size(); ++i) {
    const std::string p = crow[i].substr(crow[i].rfind(',') + 1);
    CHECK(std::abs(std::abs(std::stod(p)) - std::sqrt(0.5)) <= 1e-15);
  }
}

TEST_CASE("rotnum and string") {
  const Result r = invoke({"rotnum", "--a1sq", "1", "--a2sq", "1", "--lambda-caustic", "-0.75"});
  REQUIRE(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  const fs::path dir = scratch_dir("string");
  REQUIRE(invoke({"string", "--samples", "16", "--out-dir", dir.string()}).code == 0);
  CHECK(lines(slurp(dir / "string.csv")).size() == 1 + 16);
  CHECK(fs::exists(dir / "string.svg"));
}

TEST_CASE("verify on a circle skips focal checks") {
  const fs::path dir = scratch_dir("verify_circle");
  const Result r = invoke({"verify", "--a1sq", "1", "--a2sq", "1", "--n", "3", "--out-dir", dir.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "verify_report.json"));
  bool saw = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "elliptic_coords_round_trip") {
      saw = true;
      CHECK(c["status"] == "skipped");
      CHECK(c["note"] == "skipped (degenerate family)");
    }
  }
  CHECK(saw);
}

// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "subsel/csv.hpp"
#include "subsel/regress.hpp"

namespace subsel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kMiller = std::string(SUBSEL_DATA_DIR) + "/miller.csv";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> result;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) result.push_back(json::parse(line));
  return result;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "subsel_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, GenMillerMatchesShippedFile) {
  const auto r = invoke({"gen", "miller"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, slurp(kMiller));
}

TEST(Cli, AuditMiller) {
  const auto r = invoke({"audit", kMiller, "--k", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "1");
  EXPECT_FALSE(j["partial"].get<bool>());
  EXPECT_FALSE(j["submodular"].get<bool>());
  EXPECT_GT(j["violations"]["total"].get<int>(), 0);
  EXPECT_NEAR(j["r_squared_full"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(j["selection"]["stepwise"]["steps"][0]["feature"], "X3");
  EXPECT_EQ(j["selection"]["best_subset"]["selected"], (json{"X1", "X2"}));
  EXPECT_FALSE(j["selection"]["nwf"]["guarantee_holds"].get<bool>());
  EXPECT_EQ(j["selection"]["sis_ranking"][0]["feature"], "X3");
  EXPECT_TRUE(j["spectral"]["restricted_eigenvalue"]["is_heuristic"].get<bool>());
  EXPECT_EQ(j["submodularity_ratio"].size(), 2u);
}

TEST(Cli, AuditOrthogonalIsModular) {
  const auto d = regress::gram_factory(testing::orthogonal_gram({0.3, -0.4, 0.5}), 10);
  const fs::path path = scratch("orth.csv");
  {
    std::ofstream f(path);
    csv::write(f, d);
  }
  const auto r = invoke({"audit", path.string(), "--k", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["submodular"].get<bool>());
  EXPECT_NEAR(j["gamma_s2"]["gamma_s2"].get<double>(), 1.0, 1e-8);
  for (const auto& ratio : j["submodularity_ratio"]) {
    EXPECT_NEAR(ratio["gamma_sr"].get<double>(), 1.0, 1e-8);
  }
}

TEST(Cli, AuditGatingIsPartial) {
  const auto r = invoke({"audit", kMiller, "--max-enum", "2"});
  EXPECT_EQ(r.code, cli::kExitPartial);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["partial"].get<bool>());
  EXPECT_FALSE(j["skipped"].empty());
  EXPECT_EQ(j["skipped"][0]["kind"], "TooManyFeatures");
}

TEST(Cli, SelectStepwise) {
  const auto r = invoke({"select", kMiller, "--algo", "stepwise", "--k", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[0]["feature"], "X3");
  EXPECT_NEAR(ls[0]["delta_r2"].get<double>(), 0.2, 1e-12);
  EXPECT_EQ(ls.back()["stop"], "k_reached");
  const auto stopped = lines(
      invoke({"select", kMiller, "--algo", "stepwise", "--k", "3", "--t-stop", "2"}).out);
  EXPECT_EQ(stopped.back()["stop"], "t_stop");
  EXPECT_EQ(stopped.back()["selected"], (json{"X3"}));
}

TEST(Cli, SelectBestAndIsis) {
  const auto best = lines(invoke({"select", kMiller, "--algo", "best", "--k", "2"}).out);
  EXPECT_EQ(best.back()["selected"], (json{"X1", "X2"}));
  const auto isis =
      lines(invoke({"select", kMiller, "--algo", "isis", "--d", "1", "--rounds", "3"}).out);
  EXPECT_EQ(isis.back()["selected"], (json{"X3", "X2", "X1"}));
  EXPECT_EQ(isis.back()["rounds"].size(), 3u);
  const auto l0 = lines(invoke({"select", kMiller, "--algo", "l0", "--lambda", "0,0.1"}).out);
  EXPECT_EQ(l0.size(), 2u);
  const auto sis = lines(invoke({"select", kMiller, "--algo", "sis", "--d", "2"}).out);
  EXPECT_EQ(sis.back()["selected"], (json{"X2", "X3"}));
}

TEST(Cli, GridWritesCsvAndSvg) {
  const fs::path csv_path = scratch("grid.csv");
  const fs::path svg_dir = scratch("svg");
  const auto r = invoke({"grid", "--theta-steps", "8", "--v-steps", "8", "--out",
                         csv_path.string(), "--svg", svg_dir.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const std::string text = slurp(csv_path);
  EXPECT_EQ(text.rfind("theta,v,tau", 0), 0u);
  EXPECT_TRUE(fs::exists(svg_dir / "gamma_sr.svg"));
  EXPECT_TRUE(fs::exists(svg_dir / "t_ratio_bound.svg"));
}

TEST(Cli, GenIsDeterministic) {
  const std::vector<std::string> args{"gen", "gaussian", "--n", "15", "--m", "4",
                                      "--rho", "0.2", "--seed", "9"};
  const auto a = invoke(args);
  ASSERT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, invoke(args).out);
  auto other = args;
  other.back() = "10";
  EXPECT_NE(a.out, invoke(other).out);
  std::istringstream in(invoke({"gen", "suppressor", "--p", "3", "--n", "10"}).out);
  EXPECT_EQ(csv::read(in, "Y").features.cols(), 3);
}

TEST(Cli, ErrorsExitOne) {
  auto r = invoke({"audit", "/nonexistent.csv"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_EQ(r.err.rfind("subsel: ", 0), 0u);
  EXPECT_EQ(invoke({"select", kMiller, "--algo", "bogus"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"select", kMiller, "--algo", "stepwise", "--k", "9"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"audit", kMiller, "--response", "Q"}).code, cli::kExitError);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace subsel

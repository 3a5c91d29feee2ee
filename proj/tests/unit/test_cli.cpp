/*
 * Copyright 2026 The rankcurve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rankcurve/cli.hpp"

namespace rankcurve {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rankcurve");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int status = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json error_of(const Outcome& o) { return nlohmann::json::parse(o.err); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("rankcurve_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  fs::path dir;
};

const std::vector<std::string> kGabidulin = {"check-mrd", "--field", "2^1^5", "--gen", "x", "--gen", "x^q",
                                             "--gen", "x^q^2"};

TEST_F(Cli, CheckMrdGabidulin) {
  auto o = invoke(kGabidulin);
  ASSERT_EQ(o.status, 0) << o.err;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["is_mrd"], true);
  EXPECT_EQ(j["examined"], 1057);
}

TEST_F(Cli, CheckMrdFalseVerdictExitsOne) {
  auto o = invoke({"check-mrd", "--field", "3^1^4", "--gen", "x", "--gen", "x^q^2"});
  EXPECT_EQ(o.status, 1);
  EXPECT_EQ(nlohmann::json::parse(o.out)["is_mrd"], false);
}

TEST_F(Cli, CsvSpectrum) {
  auto args = kGabidulin;
  args.insert(args.end(), {"--format", "csv"});
  auto o = invoke(args);
  ASSERT_EQ(o.status, 0);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "rank,count");
  EXPECT_NE(o.out.find("\n3,155\n"), std::string::npos);
}

TEST_F(Cli, MalformedSpecsExitTwo) {
  for (std::vector<std::string> args : {
           std::vector<std::string>{"check-mrd", "--field", "2^1", "--gen", "x"},
           {"check-mrd", "--field", "2^1^5:modulus=1,1", "--gen", "x"},
           {"check-mrd", "--field", "2^1^5", "--gen", "x^p"},
           {"check-mrd", "--field", "2^1^5", "--gen", "x", "--unknown"},
           {"check-scattered", "--field", "2^1^5", "--poly", "x^q"},
           {"families", "--family", "Q", "--field", "2^1^5"},
           {"criterion-table", "--case", "3t"},
           {"cm-threshold", "--dim", "0", "--deg", "2"},
           {"check-scattered", "--field", "2^1^5", "--poly", "x^q", "--t", "0", "--format", "csv"},
           {"no-such-command"},
       }) {
    auto o = invoke(args);
    EXPECT_EQ(o.status, 2) << args[0] << " " << o.out;
    auto e = error_of(o);
    EXPECT_TRUE(e.contains("code") && e.contains("error") && e.contains("message"));
  }
  auto o = invoke({"check-mrd", "--field", "2^1", "--gen", "x"});
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
  EXPECT_EQ(error_of(invoke({"check-mrd", "--field", "4^1^2", "--gen", "x"}))["error"], "NotPrime");
}

TEST_F(Cli, StrictInstanceParsing) {
  auto o = invoke({"curve-analyze", "--instance-json",
                   R"({"p":3,"n":6,"t":1,"k":4,"case":"2t","delta":"g","G_coeffs":[[2,"1"],[4,"1"]],"dleta":1})"});
  EXPECT_EQ(o.status, 2);
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
  o = invoke({"curve-analyze", "--instance-json", R"({"p":3,"n":6,"t":-1,"k":4})"});
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
  o = invoke({"curve-analyze", "--instance-json", "{not json"});
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
  write("spec.json", R"({"field":"2^1^5","gens":["x"],"extra":true})");
  o = invoke({"check-mrd", "--spec", path("spec.json")});
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
}

TEST_F(Cli, SpecFile) {
  write("spec.json", R"({"field":"2^1^5","gens":["x","x^q","x^q^2"],"t":0})");
  auto o = invoke({"check-mrd", "--spec", path("spec.json")});
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["code"]["t"], 0);
}

TEST_F(Cli, BudgetExceeded) {
  auto args = kGabidulin;
  args.insert(args.end(), {"--budget", "100"});
  auto o = invoke(args);
  EXPECT_EQ(o.status, 2);
  EXPECT_EQ(error_of(o)["error"], "BudgetExceeded");
  EXPECT_EQ(error_of(o)["code"], 22);
}

TEST_F(Cli, OutputFileAndIoFailure) {
  auto args = kGabidulin;
  args.insert(args.end(), {"--output", path("r.json")});
  auto o = invoke(args);
  ASSERT_EQ(o.status, 0);
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path("r.json"));
  EXPECT_EQ(nlohmann::json::parse(in)["d"], 3);
  args.back() = path("missing/dir/r.json");
  o = invoke(args);
  EXPECT_EQ(o.status, 2);
  EXPECT_EQ(error_of(o)["error"], "IoFailure");
}

TEST_F(Cli, CheckpointResumesToTheSameReport) {
  std::vector<std::string> base = {"check-moore", "--field", "2^1^4", "--gen", "x", "--gen", "x^q", "--gen", "x^q^2"};
  auto whole = invoke(base);
  ASSERT_EQ(whole.status, 0);
  auto args = base;
  args.insert(args.end(), {"--checkpoint", path("ck.json"), "--chunk", "500", "--max-chunks", "3"});
  auto first = invoke(args);
  EXPECT_EQ(first.status, 2);
  EXPECT_EQ(error_of(first)["error"], "Interrupted");
  auto ck = nlohmann::json::parse(std::ifstream(path("ck.json")));
  EXPECT_EQ(ck["next"], 1500);
  auto second = invoke(args);
  EXPECT_EQ(second.status, 2);
  args.resize(args.size() - 2);
  auto rest = invoke(args);
  ASSERT_EQ(rest.status, 0) << rest.err;
  EXPECT_EQ(rest.out, whole.out);
  // A finished checkpoint replays the same report.
  EXPECT_EQ(invoke(args).out, whole.out);
  // A checkpoint from another run is refused.
  std::vector<std::string> other = {"check-moore", "--field", "2^1^4", "--gen", "x", "--gen", "x^q",
                                    "--gen", "x^q^3", "--checkpoint", path("ck.json")};
  EXPECT_EQ(error_of(invoke(other))["error"], "SpecParse");
}

TEST_F(Cli, SpectrumCheckpoint) {
  auto args = kGabidulin;
  auto whole = invoke(args);
  args.insert(args.end(), {"--checkpoint", path("s.json"), "--chunk", "100", "--max-chunks", "4"});
  EXPECT_EQ(invoke(args).status, 2);
  args.resize(args.size() - 2);
  auto rest = invoke(args);
  EXPECT_EQ(rest.status, 0);
  EXPECT_EQ(rest.out, whole.out);
}

TEST_F(Cli, OtherSubcommands) {
  EXPECT_EQ(invoke({"check-scattered", "--field", "2^1^5", "--poly", "x^q", "--t", "0"}).status, 0);
  EXPECT_EQ(invoke({"check-scattered", "--field", "3^1^4", "--poly", "x^q^2", "--t", "0"}).status, 1);
  EXPECT_EQ(invoke({"probe-exceptional", "--field", "2^1^3", "--poly", "x^q", "--t", "0", "--m", "1,2,3"}).status, 0);
  EXPECT_EQ(invoke({"families", "--family", "G", "--field", "2^1^5", "--r", "3", "--s", "1"}).status, 0);
  EXPECT_EQ(invoke({"families", "--family", "Ps", "--field", "2^1^5", "--t", "1"}).status, 0);
  EXPECT_EQ(invoke({"families", "--family", "LP", "--field", "3^1^4", "--t", "1", "--delta", "g"}).status, 0);
  auto o = invoke({"families", "--family", "LP", "--field", "3^1^4", "--t", "1", "--delta", "1"});
  EXPECT_EQ(error_of(o)["error"], "NormConditionViolation");
  auto cm = invoke({"cm-threshold", "--dim", "2", "--deg", "3"});
  EXPECT_EQ(cm.status, 0);
  EXPECT_EQ(nlohmann::json::parse(cm.out)["threshold"], 59);
}

TEST_F(Cli, CriterionTableCsv) {
  auto o = invoke({"criterion-table", "--case", "2t", "--format", "csv"});
  ASSERT_EQ(o.status, 0);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "case,q,t,k,subcase,bound,threshold,direct,passes");
  std::set<std::pair<int, int>> failing;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 9u);
    if (cells[8] == "false") failing.insert({std::stoi(cells[2]), std::stoi(cells[1])});
  }
  EXPECT_EQ(failing, (std::set<std::pair<int, int>>{{1, 3}, {1, 4}, {1, 5}, {2, 3}}));
}

TEST_F(Cli, CurveAnalyzeExitCodes) {
  const std::string q3 = R"({"p":3,"n":6,"t":1,"k":4,"case":"2t","delta":"g","G_coeffs":[[2,"1"],[4,"1"]]})";
  auto o = invoke({"curve-analyze", "--instance-json", q3});
  EXPECT_EQ(o.status, 1) << o.err;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["criterion"]["holds"], false);
  EXPECT_EQ(j["degrees"]["A"], 78);
  EXPECT_EQ(j["singularities"].size(), 19u);
}

TEST_F(Cli, ReportsAreDeterministic) {
  const std::vector<std::vector<std::string>> runs = {
      kGabidulin,
      {"check-scattered", "--field", "3^1^4", "--poly", "x; g*x^q^2", "--t", "1"},
      {"check-moore", "--field", "2^1^4", "--gen", "x", "--gen", "x^q", "--gen", "x^q^2"},
      {"probe-exceptional", "--field", "2^1^3", "--poly", "x^q", "--t", "0"},
      {"families", "--family", "T", "--field", "3^1^4", "--r", "3", "--s", "1", "--delta", "g"},
      {"curve-analyze", "--instance-json",
       R"({"p":3,"n":6,"t":1,"k":4,"case":"2t","delta":"g","G_coeffs":[[2,"1"],[4,"1"]]})"},
      {"criterion-table", "--case", "t/2"},
      {"cm-threshold", "--dim", "1", "--deg", "2"},
  };
  for (const auto& args : runs) {
    auto a = invoke(args);
    auto w = args;
    w.insert(w.end(), {"--width", "3"});
    auto b = invoke(w);
    EXPECT_EQ(a.status, b.status) << args[0];
    EXPECT_EQ(a.out, b.out) << args[0];
    EXPECT_EQ(a.out, invoke(args).out) << args[0];
  }
}

TEST_F(Cli, BudgetFromEnvironment) {
  ::setenv("RANKCURVE_BUDGET", "10", 1);
  auto o = invoke(kGabidulin);
  ::unsetenv("RANKCURVE_BUDGET");
  EXPECT_EQ(error_of(o)["error"], "BudgetExceeded");
  ::setenv("RANKCURVE_BUDGET", "ten", 1);
  o = invoke(kGabidulin);
  ::unsetenv("RANKCURVE_BUDGET");
  EXPECT_EQ(error_of(o)["error"], "SpecParse");
}

}  // namespace
}  // namespace rankcurve

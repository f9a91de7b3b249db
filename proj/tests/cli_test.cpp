// Copyright 2026 The voi-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "voi/io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string sample(const std::string& name) { return std::string(VOI_SAMPLES_DIR) + "/" + name; }

Run run(const std::string& args) {
  const std::string cmd = std::string(VOI_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("voi_cli_test_" + name);
}

double hb(double d) {
  if (d <= 0.0 || d >= 1.0) return 0.0;
  return -d * std::log(d) - (1.0 - d) * std::log(1.0 - d);
}

double binary_hamming_voi(double rate) {
  const double target = std::log(2.0) - rate;
  if (target <= 0.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (hb(mid) < target ? lo : hi) = mid;
  }
  return 0.5 - 0.5 * (lo + hi);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

TEST(Cli, LeakageOnIndependentModelIsZero) {
  auto r = run("leakage --model " + sample("independent.json"));
  ASSERT_EQ(r.code, 0);
  auto lines = split(r.out, '\n');
  ASSERT_GT(lines.size(), 5u);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i].find("n/a") != std::string::npos) continue;
    std::istringstream row(lines[i]);
    std::string name, value;
    row >> name >> value;
    EXPECT_EQ(std::stod(value), 0.0) << lines[i];
  }
}

TEST(Cli, LeakageJsonReportsMutualInformation) {
  auto r = run("leakage --model " + sample("binary_uniform.json") + " --measure shannon --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = voi::io::parse_json_text(r.out, "stdout");
  ASSERT_EQ(j["leakage"].size(), 1u);
  EXPECT_NEAR(j["leakage"][0]["value"].get<double>(), std::log(2.0) - hb(0.1), 1e-12);
}

TEST(Cli, GainTable) {
  auto r = run("gain --model " + sample("binary_uniform.json") + " --loss " + sample("zero_one.json") +
               " --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = voi::io::parse_json_text(r.out, "stdout");
  EXPECT_NEAR(j["prior_bayes_risk"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(j["bayes_risk"].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(j["average_gain"].get<double>(), 0.4, 1e-12);
}

TEST(Cli, CurveMatchesBinaryHammingClosedForm) {
  auto r = run("voi-curve --model " + sample("binary_uniform.json") + " --loss " + sample("zero_one.json") +
               " --measure shannon --grid 9");
  ASSERT_EQ(r.code, 0);
  auto lines = split(r.out, '\n');
  ASSERT_EQ(lines.front(), "R,u_value,v_value,method,feasible_margin");
  std::size_t rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto cols = split(lines[i], ',');
    ASSERT_EQ(cols.size(), 5u) << lines[i];
    const double rate = std::stod(cols[0]), v = std::stod(cols[2]);
    EXPECT_NEAR(v, binary_hamming_voi(rate), 1e-3) << lines[i];
    ++rows;
  }
  EXPECT_EQ(rows, 9u);
}

TEST(Cli, DesignMechanismJson) {
  const auto out = temp_path("design.json");
  auto r = run("design-mechanism --model " + sample("binary_uniform.json") + " --loss " + sample("zero_one.json") +
               " --measure shannon --budget 0.368064 --out " + out.string());
  ASSERT_EQ(r.code, 0);
  const auto j = voi::io::load_json(out.string());
  EXPECT_NEAR(j["v_value"].get<double>(), 0.4, 1e-5);
  EXPECT_LE(j["privacy_value"].get<double>(), 0.368064 + 1e-6);
  EXPECT_TRUE(j.contains("disclosure_channel"));
  EXPECT_TRUE(j.contains("statistic"));
  std::filesystem::remove(out);
}

TEST(Cli, SimulateIsReproducible) {
  const std::string args = "simulate --model " + sample("binary_uniform.json") + " --loss " +
                           sample("zero_one.json") + " --measure shannon --budget 0.368064 --samples 100000 --seed 3";
  auto a = run(args);
  auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = voi::io::parse_json_text(a.out, "stdout");
  EXPECT_TRUE(j["within_band"].get<bool>());
}

TEST(Cli, VerifySmallSuitesPassAndAreDeterministic) {
  const auto p1 = temp_path("verify1.json"), p2 = temp_path("verify2.json");
  auto a = run("verify --suite sufficiency --trials 10 --seed 5 --out " + p1.string());
  auto b = run("verify --suite sufficiency --trials 10 --seed 5 --out " + p2.string());
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(read_file(p1), read_file(p2));
  EXPECT_TRUE(voi::io::load_json(p1.string())["passed"].get<bool>());
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
  auto t = run("verify --suite table1 --trials 20 --seed 7");
  EXPECT_EQ(t.code, 0) << t.out;
  EXPECT_NE(t.out.find("mmse-leakage"), std::string::npos);
  EXPECT_EQ(t.out.find("MISMATCH"), std::string::npos) << t.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("leakage --model " + sample("bad_model.json")).code, 2);
  EXPECT_EQ(run("leakage --model /nonexistent/model.json").code, 2);
  EXPECT_EQ(run("voi-point --model " + sample("binary_uniform.json") + " --budget 0.1").code, 1);
  EXPECT_EQ(run("no-such-command").code, 1);
  EXPECT_EQ(run("verify --suite bogus").code, 1);
  EXPECT_EQ(run("leakage --model " + sample("binary_uniform.json") + " --measure nonsense").code, 2);
}

}  // namespace

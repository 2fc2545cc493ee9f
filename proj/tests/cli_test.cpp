// Copyright 2026 The mi-audit Authors
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


#include "cli.hpp"
#include "io.hpp"

#include "miaudit/dist.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace miaudit::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("mi_audit_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_file(path(name), text);
    return path(name);
  }
  std::string write(const std::string& name, const json& j) const { return write(name, j.dump()); }

  static json sim_config() {
    return {{"dist", {{"law", "bernoulli_uniform"}, {"d", 100}, {"a", 0.25}, {"seed", 3}}},
            {"n", 100},
            {"mechanism", "empirical_mean"},
            {"score", "lr_asymptotic"},
            {"target", "easy"},
            {"rounds", 10},
            {"master_seed", 17}};
  }

  fs::path dir_;
};

void expect_error_json(const std::string& err, const std::string& kind) {
  ASSERT_FALSE(err.empty());
  EXPECT_EQ(err.find('\n'), err.size() - 1) << err;
  const json e = json::parse(err);
  EXPECT_EQ(e.at("error"), kind);
  EXPECT_TRUE(e.at("message").is_string());
}

TEST_F(CliTest, TheoryWithZeroLeakageIsDiagonal) {
  const auto cfg = write("m0.json", json{{"m", 0.0}});
  const auto r = run_cli({"theory", "--config", cfg, "--out-csv", path("t.csv"), "--out-json",
                          path("t.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto curve = read_curve_csv(path("t.csv"));
  ASSERT_EQ(curve.size(), 512u);
  for (const auto& p : curve) EXPECT_EQ(p.fpr, p.tpr);
  const json out = json::parse(read_file(path("t.json")));
  EXPECT_EQ(out.at("leakage"), 0.0);
  EXPECT_EQ(out.at("gdp").size(), 11u);
  EXPECT_TRUE(out.at("master_seed").is_null());
  EXPECT_TRUE(out.contains("config_hash"));
  EXPECT_TRUE(out.contains("tool_version"));
}

TEST_F(CliTest, TheoryFromDistributionMatchesLibrary) {
  json cfg = sim_config();
  cfg["mechanism"] = {{"mechanism", "subsampled_mean"}, {"rho", 0.5}};
  const auto file = write("c.json", cfg);
  const std::vector<std::string> args{"theory",   "--config",      file,
                                      "--out-csv", path("t.csv"), "--out-json", path("t.json")};
  ASSERT_EQ(run_cli(args).code, 0);
  const std::string csv = read_file(path("t.csv"));
  const std::string js = read_file(path("t.json"));
  const auto dist = ProductDistribution::bernoulli_uniform(100, 0.25, 3);
  const double m = 0.5 * leakage_score(dist, make_extreme_targets(dist).easy, 100);
  EXPECT_DOUBLE_EQ(json::parse(js).at("m_eff").get<double>(), m);
  ASSERT_EQ(run_cli(args).code, 0);
  EXPECT_EQ(read_file(path("t.csv")), csv);
  EXPECT_EQ(read_file(path("t.json")), js);
}

TEST_F(CliTest, MissingKeyNamesIt) {
  json cfg = sim_config();
  cfg.erase("n");
  const auto r = run_cli({"simulate", "--config", write("c.json", cfg), "--out-dir", path("o")});
  EXPECT_EQ(r.code, kExitConfig);
  expect_error_json(r.err, "config");
  EXPECT_NE(r.err.find("'n'"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownScoreListsValidNames) {
  json cfg = sim_config();
  cfg["score"] = "lr_magic";
  const auto r = run_cli({"simulate", "--config", write("c.json", cfg), "--out-dir", path("o")});
  EXPECT_EQ(r.code, kExitConfig);
  for (const char* name : {"lr_exact_bernoulli", "lr_asymptotic", "lr_empirical_cov",
                           "scalar_product", "lr_noisy", "lr_subsampled", "lr_misspecified"}) {
    EXPECT_NE(r.err.find(name), std::string::npos) << name;
  }
}

TEST_F(CliTest, UsageAndSyntaxErrors) {
  EXPECT_EQ(run_cli({}).code, kExitConfig);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"simulate", "--config"}).code, kExitConfig);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  const auto bad = run_cli({"simulate", "--config", write("c.json", std::string("{\"n\": ")),
                            "--out-dir", path("o")});
  EXPECT_EQ(bad.code, kExitConfig);
  expect_error_json(bad.err, "config");
  const auto missing = run_cli({"simulate", "--config", path("nope.json"), "--out-dir", path("o")});
  EXPECT_EQ(missing.code, kExitConfig);
}

TEST_F(CliTest, SimulateReplaysByteIdentically) {
  const auto cfg = write("c.json", sim_config());
  ASSERT_EQ(run_cli({"simulate", "--config", cfg, "--out-dir", path("a"), "--threads", "1"}).code, 0);
  ASSERT_EQ(run_cli({"simulate", "--config", cfg, "--out-dir", path("b"), "--threads", "3"}).code, 0);
  for (const char* f : {"rounds.csv", "roc.csv", "summary.json"}) {
    EXPECT_EQ(read_file(path(std::string("a/") + f)), read_file(path(std::string("b/") + f))) << f;
  }
  ASSERT_EQ(run_cli({"simulate", "--config", cfg, "--out-dir", path("c"), "--seed", "18"}).code, 0);
  EXPECT_NE(read_file(path("a/rounds.csv")), read_file(path("c/rounds.csv")));
  const json summary = json::parse(read_file(path("c/summary.json")));
  EXPECT_EQ(summary.at("master_seed"), 18);
  EXPECT_NE(summary.at("config_hash"), json::parse(read_file(path("a/summary.json"))).at("config_hash"));
  for (const char* key : {"m_star", "auc", "advantage_at_bayes_threshold", "theory_leakage",
                          "sup_norm_gap", "tool_version"}) {
    EXPECT_TRUE(summary.contains(key)) << key;
  }
}

TEST_F(CliTest, SimulateSmokeBenchmark) {
  const auto cfg = write("c.json", sim_config());
  const auto start = std::chrono::steady_clock::now();
  const auto r = run_cli({"simulate", "--config", cfg, "--out-dir", path("o"), "--rounds", "10"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(secs, 5.0);
  const std::string rounds = read_file(path("o/rounds.csv"));
  EXPECT_EQ(std::count(rounds.begin(), rounds.end(), '\n'), 11);
  EXPECT_EQ(rounds.rfind("round,score,b\n", 0), 0u);
}

TEST_F(CliTest, ThreadsEnvironmentFallback) {
  const auto cfg = write("c.json", sim_config());
  ::setenv("MI_AUDIT_THREADS", "two", 1);
  const auto bad = run_cli({"simulate", "--config", cfg, "--out-dir", path("o")});
  ::setenv("MI_AUDIT_THREADS", "2", 1);
  const auto good = run_cli({"simulate", "--config", cfg, "--out-dir", path("o")});
  ::unsetenv("MI_AUDIT_THREADS");
  EXPECT_EQ(bad.code, kExitConfig);
  EXPECT_EQ(good.code, kExitOk);
}

TEST_F(CliTest, CanaryRanksAndReportsNumericalFailure) {
  const auto refs = write("refs.csv", std::string("a,b\n1,0\n-1,0\n0,2\n0,-2\n"));
  const auto cands = write("cands.csv", std::string("a,b\n0,1\n3,0\n0,0\n"));
  const auto r = run_cli({"canary", "--refs", refs, "--candidates", cands, "--out", path("c.json"),
                          "--mode", "diagonal", "--ridge", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json out = json::parse(read_file(path("c.json")));
  ASSERT_EQ(out.at("ranked").size(), 3u);
  EXPECT_EQ(out.at("ranked")[0].at("index"), 1);
  EXPECT_DOUBLE_EQ(out.at("ranked")[0].at("score").get<double>(), 18.0);
  EXPECT_EQ(out.at("ranked")[2].at("index"), 2);

  const auto flat = write("flat.csv", std::string("a,b\n1,0\n-1,0\n"));
  const auto fail = run_cli({"canary", "--refs", flat, "--candidates", cands, "--out",
                             path("f.json"), "--mode", "diagonal", "--ridge", "0"});
  EXPECT_EQ(fail.code, kExitNumerical);
  expect_error_json(fail.err, "numerical");
  EXPECT_EQ(run_cli({"canary", "--refs", refs, "--candidates", cands, "--out", path("x.json"),
                     "--mode", "sparse"})
                .code,
            kExitConfig);
}

TEST_F(CliTest, WhiteboxWritesBothAttacks) {
  const json cfg = {{"data", {{"source", "blobs"}, {"features", 4}, {"classes", 2}, {"seed", 1}}},
                    {"n", 64},
                    {"repetitions", 8},
                    {"candidates", 50},
                    {"reference", {{"n0", 100}}},
                    {"sgd", {{"eta", 0.1}, {"batch_size", 16}}},
                    {"master_seed", 4}};
  const auto file = write("w.json", cfg);
  const auto r = run_cli({"whitebox", "--config", file, "--out-dir", path("w")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json out = json::parse(read_file(path("w/whitebox.json")));
  EXPECT_TRUE(out.at("covariance").contains("auc"));
  EXPECT_TRUE(out.at("scalar").contains("auc"));
  EXPECT_EQ(out.at("target").at("kind"), "top");
  const std::string scores = read_file(path("w/scores.csv"));
  EXPECT_EQ(std::count(scores.begin(), scores.end(), '\n'), 9);
  ASSERT_EQ(run_cli({"whitebox", "--config", file, "--out-dir", path("w2")}).code, 0);
  EXPECT_EQ(read_file(path("w2/scores.csv")), scores);
}

TEST_F(CliTest, ReportGapLegendAndEmptyInput) {
  const auto curve = write("c.csv", std::string("fpr,tpr\n0,0\n0.1,0.5\n1,1\n"));
  const auto r = run_cli({"report", "--empirical", curve, "--theory", curve, "--label", "same",
                          "--out-svg", path("r.svg"), "--out-json", path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json out = json::parse(read_file(path("r.json")));
  EXPECT_EQ(out.at("pairs")[0].at("sup_norm_gap"), 0.0);
  const std::string svg = read_file(path("r.svg"));
  std::size_t legends = 0;
  for (auto pos = svg.find("class=\"legend\""); pos != std::string::npos;
       pos = svg.find("class=\"legend\"", pos + 1)) {
    ++legends;
  }
  EXPECT_EQ(legends, 2u);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);

  const auto empty = run_cli({"report", "--out-svg", path("e.svg"), "--out-json", path("e.json")});
  EXPECT_EQ(empty.code, kExitConfig);
  expect_error_json(empty.err, "config");
  const auto header_only = write("h.csv", std::string("fpr,tpr\n"));
  EXPECT_EQ(run_cli({"report", "--empirical", header_only, "--out-svg", path("e.svg"),
                     "--out-json", path("e.json")})
                .code,
            kExitConfig);
}

}  // namespace
}  // namespace miaudit::cli

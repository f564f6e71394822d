// Copyright 2026 The agvplan Authors
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

#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "agv/cli/cli.hpp"
#include "agv/envsim/dataset.hpp"
#include "agv/nn/mlp.hpp"
#include "agv/nn/model_io.hpp"
#include "agv/terrain/graph_io.hpp"

namespace agv::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("agvplan_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run_cli(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static void spit(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

  // Diamond: s-a-d flat (2 + 2 m), s-d steep (3 m).
  void write_diamond() {
    spit(path("diamond.json"), R"({"nodes":[{"id":"s","x":0,"y":0,"z":0},{"id":"a","x":1,"y":1,"z":0},
      {"id":"d","x":2,"y":0,"z":0}],"edges":[
      {"id":"sa","u":"s","v":"a","dist_m":2,"max_slope_deg":0},
      {"id":"ad","u":"a","v":"d","dist_m":2,"max_slope_deg":0},
      {"id":"sd","u":"s","v":"d","dist_m":3,"max_slope_deg":40}]})");
    // Feasibility drops sharply with slope: p(flat) ~ 1, p(40 deg) ~ 0.
    nn::MlpParams m = nn::MlpParams::zeros(nn::kLogisticDims, nn::ModelKind::kLogistic);
    m.layers[0].w = {0, 0, 0, -60, 0};
    m.layers[0].b = {30};
    spit(path("slope.json"), nn::serialize_model(m));
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GenGraphWritesLoadableGraph) {
  ASSERT_EQ(run_cli({"gen-graph", "--nodes", "40", "--k", "3", "--seed", "1", "--out", path("g.json")}),
            kOk)
      << err_.str();
  const terrain::TerrainGraph g = terrain::load_graph(slurp(path("g.json")));
  EXPECT_EQ(g.node_count(), 40);
  EXPECT_TRUE(g.is_connected());
  ASSERT_EQ(run_cli({"gen-graph", "--nodes", "40", "--k", "3", "--seed", "1", "--out", path("h.json")}),
            kOk);
  EXPECT_EQ(slurp(path("g.json")), slurp(path("h.json")));
  EXPECT_EQ(run_cli({"gen-graph", "--nodes", "0", "--out", path("x.json")}), kUsage);
}

TEST_F(CliTest, PipelineGenDataTrainPlan) {
  ASSERT_EQ(run_cli({"gen-graph", "--nodes", "40", "--out", path("g.json")}), kOk);
  ASSERT_EQ(run_cli({"gen-data", "--graph", path("g.json"), "--out-train", path("tr.csv"),
                     "--out-val", path("va.csv")}),
            kOk)
      << err_.str();
  for (const char* f : {"tr.csv", "va.csv"}) {
    std::istringstream lines(slurp(path(f)));
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, envsim::kDatasetHeader);
  }
  ASSERT_EQ(run_cli({"train", "--train", path("tr.csv"), "--val", path("va.csv"), "--out",
                     path("m.json")}),
            kOk)
      << err_.str();
  const auto summary = nlohmann::json::parse(out_.str());
  EXPECT_GE(summary["val_accuracy"].get<double>(), 0.75);
  const nn::MlpParams model = nn::load_model(slurp(path("m.json")));
  EXPECT_EQ(model.dims, nn::kMlpDims);

  ASSERT_EQ(run_cli({"plan", "--graph", path("g.json"), "--model", path("m.json"), "--weather",
                     "5,5,5", "--start", "n0", "--dest", "n7", "--mandatory", "n3,n12"}),
            kOk)
      << err_.str();
  const auto plan = nlohmann::json::parse(out_.str());
  EXPECT_EQ(plan["walk"].front(), "n0");
  EXPECT_EQ(plan["walk"].back(), "n7");
  EXPECT_TRUE(plan.contains("interventions"));
  EXPECT_EQ(plan["solver"], "pcmco");
}

TEST_F(CliTest, PlanDiamondBothSolvers) {
  write_diamond();
  const std::vector<std::string> base = {"plan", "--graph", path("diamond.json"), "--model",
                                         path("slope.json"), "--weather", "5,5,5",
                                         "--start", "s", "--dest", "d"};
  ASSERT_EQ(run_cli(base), kOk) << err_.str();
  auto j = nlohmann::json::parse(out_.str());
  EXPECT_DOUBLE_EQ(j["d_end_m"].get<double>(), 4.0);
  EXPECT_DOUBLE_EQ(j["p_end"].get<double>(), 0.0);
  EXPECT_EQ(j["walk"], nlohmann::json({"s", "a", "d"}));

  auto pco = base;
  pco.insert(pco.end(), {"--solver", "pco", "--out", path("pco.json")});
  ASSERT_EQ(run_cli(pco), kOk) << err_.str();
  EXPECT_TRUE(out_.str().empty());
  j = nlohmann::json::parse(slurp(path("pco.json")));
  EXPECT_DOUBLE_EQ(j["d_end_m"].get<double>(), 3.0);
  EXPECT_EQ(j["solver"], "pco");
}

TEST_F(CliTest, ExitCodes) {
  write_diamond();
  EXPECT_EQ(run_cli({}), kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}), kUsage);
  EXPECT_EQ(run_cli({"plan", "--graph", path("missing.json"), "--solver", "pco", "--start", "s",
                     "--dest", "d"}),
            kIoError);
  EXPECT_EQ(run_cli({"plan", "--graph", path("diamond.json"), "--solver", "pco", "--start", "s",
                     "--dest", "zz"}),
            kInfeasible);
  EXPECT_EQ(run_cli({"plan", "--graph", path("diamond.json"), "--start", "s", "--dest", "d"}),
            kUsage);
  EXPECT_EQ(run_cli({"plan", "--graph", path("diamond.json"), "--model", path("slope.json"),
                     "--weather", "5,5,99", "--start", "s", "--dest", "d"}),
            kUsage);
  spit(path("bad.json"), "{\"nodes\": [");
  EXPECT_EQ(run_cli({"plan", "--graph", path("bad.json"), "--solver", "pco", "--start", "s",
                     "--dest", "d"}),
            kIoError);
  EXPECT_EQ(run_cli({"bench", "--graph", path("diamond.json"), "--model", path("slope.json"),
                     "--per-class", "1", "--out", path("r.json")}),
            kUsage);
}

TEST_F(CliTest, BenchWritesReportAndCsv) {
  ASSERT_EQ(run_cli({"gen-graph", "--nodes", "12", "--seed", "3", "--out", path("g.json")}), kOk);
  write_diamond();
  ASSERT_EQ(run_cli({"bench", "--graph", path("g.json"), "--model", path("slope.json"),
                     "--per-class", "2", "--seed", "5", "--out", path("r.json"), "--csv",
                     path("r.csv")}),
            kOk)
      << err_.str();
  const auto report = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(report["records"].size(), 6u);
  std::istringstream csv(slurp(path("r.csv")));
  int lines = 0;
  for (std::string line; std::getline(csv, line);) lines += !line.empty();
  EXPECT_EQ(lines, 1 + 12);

  ASSERT_EQ(run_cli({"bench", "--graph", path("g.json"), "--model", path("slope.json"),
                     "--per-class", "2", "--seed", "5", "--threads", "3", "--out",
                     path("r3.json")}),
            kOk);
  EXPECT_EQ(slurp(path("r.json")), slurp(path("r3.json")));
}

}  // namespace
}  // namespace agv::cli

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

#ifndef AGV_EVALSTATS_BENCHMARK_HPP_
#define AGV_EVALSTATS_BENCHMARK_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agv/envsim/oracle.hpp"
#include "agv/evalstats/statistics.hpp"
#include "agv/nn/mlp.hpp"
#include "agv/planner/search.hpp"
#include "agv/terrain/graph.hpp"
#include "agv/terrain/instance.hpp"

namespace agv::evalstats {

// Traversed edges (repeats counted) that the oracle labels as needing a
// human. Throws std::invalid_argument on a step between non-adjacent nodes.
int64_t count_interventions(std::span<const terrain::NodeIndex> walk,
                            const terrain::TerrainGraph& graph, const envsim::Weather& w);

struct BenchmarkConfig {
  int per_class = 50;
  std::vector<envsim::WeatherClass> classes{envsim::kWeatherClasses.begin(),
                                            envsim::kWeatherClasses.end()};
  uint64_t seed = 1;
  std::optional<int64_t> node_budget = 200'000;
  int capacity = 2;
  int max_retries = 20;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct SolverRecord {
  int64_t d_end_mm = 0;
  int64_t p_end = 0;        // thousandths
  int64_t probe_penalty = 0;
  int64_t interventions = 0;
  int64_t walk_edges = 0;
  bool optimal = false;
  int64_t nodes = 0;
  double wall_ms = 0.0;
  std::vector<terrain::NodeIndex> walk;

  double d_end_m() const { return static_cast<double>(d_end_mm) / 1000.0; }
};

struct InstanceRecord {
  envsim::WeatherClass weather_class = envsim::WeatherClass::kFine;
  int index = 0;  // within its class
  envsim::Weather weather;
  terrain::Instance instance;
  int retries = 0;
  SolverRecord pco;
  SolverRecord pcmco;
};

struct ClassSummary {
  envsim::WeatherClass weather_class = envsim::WeatherClass::kFine;
  Summary pco_distance, pcmco_distance;
  Summary pco_interventions, pcmco_interventions;
  // mean(D_pcmco) / mean(D_pco) - 1.
  double distance_overhead = 0.0;
  TTestResult t_test;        // distances, pcmco vs pco
  ChiSquareResult chi_square;  // intervention counts
};

struct Report {
  BenchmarkConfig config;
  std::vector<InstanceRecord> records;  // class-major, then index
  std::vector<ClassSummary> classes;
};

// Recomputes the per-class aggregates and tests from records.
std::vector<ClassSummary> summarize(const std::vector<InstanceRecord>& records,
                                    const std::vector<envsim::WeatherClass>& classes);

using LogFn = std::function<void(const std::string&)>;

// Solves per_class random missions for every class with both solvers. PCO
// ignores the learned penalties during search; PCMCO uses them. Instances
// that either solver cannot plan are resampled up to max_retries times.
Report run_benchmark(const terrain::TerrainGraph& graph, const nn::MlpParams& params,
                     const BenchmarkConfig& cfg, const LogFn& log = {});

}  // namespace agv::evalstats

#endif  // AGV_EVALSTATS_BENCHMARK_HPP_

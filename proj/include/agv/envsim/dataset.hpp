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

#ifndef AGV_ENVSIM_DATASET_HPP_
#define AGV_ENVSIM_DATASET_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "agv/envsim/oracle.hpp"
#include "agv/terrain/graph.hpp"

namespace agv::envsim {

inline constexpr int kFeatureCount = 5;
using Features = std::array<double, kFeatureCount>;

// Model input row [x1, x2, x3, max_slope_deg, dist_m].
Features edge_features(const terrain::Edge& edge, const Weather& w);

struct Sample {
  Features features{};
  int label = 0;        // 1 = preferred, 0 = avoid
  std::string edge_id;  // provenance only, never a model input

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  std::vector<Sample> train;
  std::vector<Sample> val;
  int skipped_missions = 0;
};

// For each mission: uniform weather over {0..10}^3, the greedy shortest
// distance chain through its mandatory nodes, and one oracle-labelled sample
// per distinct traversed edge. Samples are shuffled and the last
// floor(val_fraction * n) go to the validation split.
Dataset build_dataset(const terrain::TerrainGraph& graph, int n_missions, uint64_t seed,
                      double val_fraction);

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline constexpr const char* kDatasetHeader = "x1,x2,x3,max_slope_deg,dist_m,label,edge_id";

void write_dataset_csv(std::ostream& out, const std::vector<Sample>& samples);
// Throws CsvError naming the 1-based line of the first malformed row.
std::vector<Sample> read_dataset_csv(std::istream& in);

}  // namespace agv::envsim

#endif  // AGV_ENVSIM_DATASET_HPP_

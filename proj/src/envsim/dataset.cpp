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

#include "agv/envsim/dataset.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include "agv/envsim/missions.hpp"
#include "agv/terrain/shortest_path.hpp"

namespace agv::envsim {
namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t begin = 0;
  for (;;) {
    const size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Features edge_features(const terrain::Edge& edge, const Weather& w) {
  return {static_cast<double>(w.rain), static_cast<double>(w.fog), static_cast<double>(w.wind),
          edge.max_slope_deg, edge.dist_m};
}

Dataset build_dataset(const terrain::TerrainGraph& graph, int n_missions, uint64_t seed,
                      double val_fraction) {
  if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
    throw std::invalid_argument("val_fraction must lie in (0, 1)");
  }
  Dataset data;
  std::vector<Sample> all;
  if (n_missions <= 0 || graph.node_count() < 2) return data;

  const auto missions = generate_missions(graph, n_missions, seed);
  const auto weights = terrain::distance_weights(graph);
  for (int i = 0; i < n_missions; ++i) {
    Rng rng(derive_seed(seed, {0xDA7A, static_cast<uint64_t>(i)}));
    const Weather w = sample_uniform_weather(rng);
    const terrain::Instance& m = missions[i];
    std::vector<terrain::NodeIndex> targets;
    for (const auto& id : m.mandatory) targets.push_back(graph.node_index(id));
    const auto chain = terrain::greedy_chain(graph, weights, graph.node_index(m.start), targets,
                                             graph.node_index(m.dest));
    if (!chain) {
      ++data.skipped_missions;
      continue;
    }
    std::set<terrain::EdgeIndex> seen;
    for (terrain::ArcIndex a : *chain) {
      const terrain::EdgeIndex e = graph.arc(a).edge;
      if (!seen.insert(e).second) continue;
      const terrain::Edge& edge = graph.edge(e);
      all.push_back({edge_features(edge, w), feasibility_label(edge, w), edge.id});
    }
  }

  Rng shuffler(derive_seed(seed, {0x5AFF1E}));
  shuffler.shuffle(all);
  const auto n_val = static_cast<size_t>(std::floor(val_fraction * static_cast<double>(all.size())));
  const size_t n_train = all.size() - n_val;
  data.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
  data.val.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train), all.end());
  return data;
}

void write_dataset_csv(std::ostream& out, const std::vector<Sample>& samples) {
  out << kDatasetHeader << '\n';
  for (const Sample& s : samples) {
    for (int k = 0; k < kFeatureCount; ++k) out << format_double(s.features[k]) << ',';
    out << s.label << ',' << s.edge_id << '\n';
  }
}

std::vector<Sample> read_dataset_csv(std::istream& in) {
  std::vector<Sample> samples;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw CsvError("empty dataset file", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) {
    throw CsvError("line 1: expected header '" + std::string(kDatasetHeader) + "'", 1);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    auto fail = [&](const std::string& why) -> CsvError {
      return CsvError("line " + std::to_string(line_no) + ": " + why, line_no);
    };
    if (fields.size() != 7) throw fail("expected 7 fields, got " + std::to_string(fields.size()));
    Sample s;
    for (int k = 0; k < kFeatureCount; ++k) {
      if (!parse_double(fields[k], s.features[k])) {
        throw fail("field " + std::to_string(k + 1) + " is not a finite number");
      }
    }
    if (fields[5] == "0") {
      s.label = 0;
    } else if (fields[5] == "1") {
      s.label = 1;
    } else {
      throw fail("label must be 0 or 1");
    }
    s.edge_id = std::string(fields[6]);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace agv::envsim

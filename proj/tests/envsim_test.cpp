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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "agv/common/rng.hpp"
#include "agv/envsim/dataset.hpp"
#include "agv/envsim/missions.hpp"
#include "agv/envsim/oracle.hpp"
#include "agv/terrain/generator.hpp"
#include "support/oracles.hpp"

namespace agv::envsim {
namespace {

// Score formula evaluated term by term, independent of the library.
double reference_score(double slope_deg, double rho, const Weather& w) {
  const double s = std::min(slope_deg, 45.0) / 45.0;
  const double r = w.rain / 10.0, f = w.fog / 10.0, g = w.wind / 10.0;
  return 0.45 * r * s + 0.20 * f + 0.15 * g * s + 0.10 * rho + 0.15 * rho * (r + f + g) / 3.0;
}

TEST(Roughness, PinnedFnvValue) {
  EXPECT_DOUBLE_EQ(roughness("e0"), 832.0 / 999.0);
  EXPECT_DOUBLE_EQ(roughness("e0"), (testing::fnv1a64("e0") % 1000) / 999.0);
}

TEST(Roughness, RangeAndDeterminism) {
  for (int i = 0; i < 2000; ++i) {
    const std::string id = "edge-" + std::to_string(i * 7919);
    const double r = roughness(id);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    EXPECT_EQ(r, roughness(id));
    EXPECT_DOUBLE_EQ(r, (testing::fnv1a64(id) % 1000) / 999.0);
  }
}

TEST(Oracle, WorkedScores) {
  EXPECT_NEAR(feasibility_score(45.0, 1.0, {0, 0, 0}), 0.10, 1e-12);
  EXPECT_NEAR(feasibility_score(45.0, 1.0, {10, 10, 10}), 1.05, 1e-12);
  EXPECT_NEAR(feasibility_score(4.5, 0.1, {8, 8, 8}), 0.23, 1e-12);
  // Slopes above 45 degrees saturate.
  EXPECT_EQ(feasibility_score(80.0, 0.5, {3, 4, 5}), feasibility_score(45.0, 0.5, {3, 4, 5}));
}

TEST(Oracle, MatchesReferenceFormulaAndThreshold) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const Weather w{static_cast<int>(rng.uniform_int(0, 10)), static_cast<int>(rng.uniform_int(0, 10)),
                    static_cast<int>(rng.uniform_int(0, 10))};
    const double slope = rng.uniform(0.0, 60.0);
    const std::string id = "e" + std::to_string(rng.uniform_int(0, 500));
    const double ref = reference_score(slope, roughness(id), w);
    EXPECT_NEAR(feasibility_score(slope, roughness(id), w), ref, 1e-12);
    const int label = feasibility_label(slope, id, w);
    EXPECT_EQ(label, ref >= kAvoidThreshold ? 0 : 1);
    EXPECT_EQ(label, feasibility_label(slope, id, w));
  }
}

TEST(Oracle, MonotoneInEveryWeatherVariable) {
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    Weather w{static_cast<int>(rng.uniform_int(0, 9)), static_cast<int>(rng.uniform_int(0, 9)),
              static_cast<int>(rng.uniform_int(0, 9))};
    const double slope = rng.uniform(0.0, 50.0);
    const std::string id = "e" + std::to_string(i);
    const int base = feasibility_label(slope, id, w);
    for (int var = 0; var < 3; ++var) {
      Weather up = w;
      (var == 0 ? up.rain : var == 1 ? up.fog : up.wind) += 1;
      // A 0 (avoid) label never turns back into 1.
      if (base == 0) {
        EXPECT_EQ(feasibility_label(slope, id, up), 0);
      }
      EXPECT_GE(feasibility_score(slope, roughness(id), up) + 1e-15,
                feasibility_score(slope, roughness(id), w));
    }
  }
}

TEST(Oracle, ClassDifficultyOrdering) {
  const terrain::TerrainGraph g = terrain::generate_graph(40, 3, 1);
  std::vector<double> avoid_fraction;
  for (WeatherClass c : kWeatherClasses) {
    Rng rng(derive_seed(5, {static_cast<uint64_t>(c)}));
    int64_t avoid = 0, total = 0;
    for (int k = 0; k < 100; ++k) {
      const Weather w = sample_weather(c, rng);
      for (const auto& e : g.edges()) {
        avoid += feasibility_label(e, w) == 0;
        ++total;
      }
    }
    avoid_fraction.push_back(static_cast<double>(avoid) / static_cast<double>(total));
  }
  EXPECT_LT(avoid_fraction[0], avoid_fraction[1]);
  EXPECT_LT(avoid_fraction[1], avoid_fraction[2]);
}

TEST(Weather, ClassRangesAndParsing) {
  Rng rng(3);
  for (WeatherClass c : kWeatherClasses) {
    const auto [lo, hi] = weather_class_range(c);
    std::set<int> seen;
    for (int i = 0; i < 500; ++i) {
      const Weather w = sample_weather(c, rng);
      for (int x : {w.rain, w.fog, w.wind}) {
        EXPECT_GE(x, lo);
        EXPECT_LE(x, hi);
        seen.insert(x);
      }
    }
    EXPECT_EQ(static_cast<int>(seen.size()), hi - lo + 1);
  }
  EXPECT_EQ(weather_class_range(WeatherClass::kFine), (std::array<int, 2>{0, 3}));
  EXPECT_EQ(weather_class_range(WeatherClass::kModerate), (std::array<int, 2>{4, 6}));
  EXPECT_EQ(weather_class_range(WeatherClass::kDifficult), (std::array<int, 2>{7, 10}));

  EXPECT_EQ(parse_weather("1,2,3"), (Weather{1, 2, 3}));
  EXPECT_FALSE(parse_weather("1,2").has_value());
  EXPECT_FALSE(parse_weather("1,2,11").has_value());
  EXPECT_FALSE(parse_weather("a,b,c").has_value());
  EXPECT_EQ(format_weather({4, 5, 6}), "4,5,6");
  EXPECT_THROW(check_weather({-1, 0, 0}), std::invalid_argument);
}

TEST(Missions, TwoNodeGraphHasNoWaypoints) {
  const terrain::TerrainGraph g = testing::make_graph({"a", "b"}, {{"a", "b", 1}});
  for (const auto& m : generate_missions(g, 50, 9)) {
    EXPECT_TRUE(m.mandatory.empty());
    EXPECT_NE(m.start, m.dest);
  }
}

TEST(Missions, ValidAndDeterministic) {
  const terrain::TerrainGraph g = terrain::generate_graph(40, 3, 1);
  const auto a = generate_missions(g, 100, 5);
  ASSERT_EQ(a.size(), 100u);
  EXPECT_EQ(a, generate_missions(g, 100, 5));
  std::set<size_t> sizes;
  for (const auto& m : a) {
    EXPECT_TRUE(terrain::validate_instance(g, m).empty());
    EXPECT_NE(m.start, m.dest);
    EXPECT_LE(m.mandatory.size(), static_cast<size_t>(kMaxMandatory));
    std::set<std::string> uniq(m.mandatory.begin(), m.mandatory.end());
    EXPECT_EQ(uniq.size(), m.mandatory.size());
    EXPECT_FALSE(uniq.count(m.start));
    EXPECT_FALSE(uniq.count(m.dest));
    sizes.insert(m.mandatory.size());
  }
  EXPECT_GE(sizes.size(), 8u);  // sizes spread over 0..10
}

TEST(Dataset, EmptyForZeroMissions) {
  const terrain::TerrainGraph g = terrain::generate_graph(10, 3, 1);
  const Dataset d = build_dataset(g, 0, 1, 0.2);
  EXPECT_TRUE(d.train.empty());
  EXPECT_TRUE(d.val.empty());
}

TEST(Dataset, LabelsSelfConsistentAndBalanced) {
  const terrain::TerrainGraph g = terrain::generate_graph(40, 3, 1);
  const Dataset d = build_dataset(g, 500, 3, 0.2);
  const size_t n = d.train.size() + d.val.size();
  ASSERT_GT(n, 0u);
  EXPECT_EQ(d.val.size(), static_cast<size_t>(std::floor(0.2 * static_cast<double>(n))));
  int64_t positives = 0;
  for (const auto* split : {&d.train, &d.val}) {
    for (const Sample& s : *split) {
      const auto e = g.find_edge(s.edge_id);
      ASSERT_TRUE(e.has_value());
      const auto& edge = g.edge(*e);
      const Weather w{static_cast<int>(s.features[0]), static_cast<int>(s.features[1]),
                      static_cast<int>(s.features[2])};
      EXPECT_EQ(s.features[3], edge.max_slope_deg);
      EXPECT_EQ(s.features[4], edge.dist_m);
      EXPECT_EQ(s.label, feasibility_label(edge, w));
      EXPECT_EQ(s.features, edge_features(edge, w));
      positives += s.label;
    }
  }
  const double frac = static_cast<double>(positives) / static_cast<double>(n);
  EXPECT_GE(std::min(frac, 1.0 - frac), 0.10);

  const Dataset again = build_dataset(g, 500, 3, 0.2);
  EXPECT_EQ(again.train, d.train);
  EXPECT_EQ(again.val, d.val);
}

TEST(Dataset, CsvRoundTripAndErrors) {
  const terrain::TerrainGraph g = terrain::generate_graph(12, 3, 2);
  const Dataset d = build_dataset(g, 20, 4, 0.25);
  std::stringstream buf;
  write_dataset_csv(buf, d.train);
  std::string first_line;
  std::istringstream lines(buf.str());
  std::getline(lines, first_line);
  EXPECT_EQ(first_line, kDatasetHeader);
  EXPECT_EQ(read_dataset_csv(buf), d.train);

  std::istringstream bad(std::string(kDatasetHeader) + "\n1,2,3,4,5,1,e0\n1,2,3,4,5,7,e1\n");
  try {
    read_dataset_csv(bad);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream no_header("1,2,3,4,5,1,e0\n");
  EXPECT_THROW(read_dataset_csv(no_header), CsvError);
}

}  // namespace
}  // namespace agv::envsim

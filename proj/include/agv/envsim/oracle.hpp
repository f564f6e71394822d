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

#ifndef AGV_ENVSIM_ORACLE_HPP_
#define AGV_ENVSIM_ORACLE_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "agv/common/rng.hpp"
#include "agv/terrain/graph.hpp"

namespace agv::envsim {

// Rain, fog and wind intensities, each an integer in [0, 10].
struct Weather {
  int rain = 0;
  int fog = 0;
  int wind = 0;

  bool valid() const;
  friend bool operator==(const Weather&, const Weather&) = default;
};

// Throws std::invalid_argument for out-of-range values.
void check_weather(const Weather& w);

// Parses "x1,x2,x3".
std::optional<Weather> parse_weather(std::string_view text);
std::string format_weather(const Weather& w);

enum class WeatherClass { kFine, kModerate, kDifficult };

inline constexpr std::array<WeatherClass, 3> kWeatherClasses = {
    WeatherClass::kFine, WeatherClass::kModerate, WeatherClass::kDifficult};

std::string_view weather_class_name(WeatherClass c);
// Inclusive band each variable is drawn from: {0..3}, {4..6}, {7..10}.
std::array<int, 2> weather_class_range(WeatherClass c);

Weather sample_weather(WeatherClass c, Rng& rng);
Weather sample_uniform_weather(Rng& rng);

// Hidden per-edge terrain property in [0, 1]: FNV-1a-64(id) mod 1000 / 999.
double roughness(std::string_view edge_id);

inline constexpr double kAvoidThreshold = 0.35;

// Difficulty score of an edge. Nondecreasing in every weather variable.
double feasibility_score(double max_slope_deg, double edge_roughness, const Weather& w);

// 1 = autonomously feasible (preferred), 0 = needs intervention (avoid).
int feasibility_label(double max_slope_deg, std::string_view edge_id, const Weather& w);
int feasibility_label(const terrain::Edge& edge, const Weather& w);

}  // namespace agv::envsim

#endif  // AGV_ENVSIM_ORACLE_HPP_

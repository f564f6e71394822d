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

#include "agv/envsim/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace agv::envsim {

bool Weather::valid() const {
  auto ok = [](int v) { return v >= 0 && v <= 10; };
  return ok(rain) && ok(fog) && ok(wind);
}

void check_weather(const Weather& w) {
  if (!w.valid()) throw std::invalid_argument("weather variables must be integers in [0, 10]");
}

std::optional<Weather> parse_weather(std::string_view text) {
  int values[3];
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 3; ++i) {
    auto [next, ec] = std::from_chars(p, end, values[i]);
    if (ec != std::errc()) return std::nullopt;
    p = next;
    if (i < 2) {
      if (p == end || *p != ',') return std::nullopt;
      ++p;
    }
  }
  if (p != end) return std::nullopt;
  Weather w{values[0], values[1], values[2]};
  if (!w.valid()) return std::nullopt;
  return w;
}

std::string format_weather(const Weather& w) {
  return std::to_string(w.rain) + "," + std::to_string(w.fog) + "," + std::to_string(w.wind);
}

std::string_view weather_class_name(WeatherClass c) {
  switch (c) {
    case WeatherClass::kFine:
      return "fine";
    case WeatherClass::kModerate:
      return "moderate";
    case WeatherClass::kDifficult:
      return "difficult";
  }
  return "?";
}

std::array<int, 2> weather_class_range(WeatherClass c) {
  switch (c) {
    case WeatherClass::kFine:
      return {0, 3};
    case WeatherClass::kModerate:
      return {4, 6};
    case WeatherClass::kDifficult:
      return {7, 10};
  }
  return {0, 10};
}

Weather sample_weather(WeatherClass c, Rng& rng) {
  const auto [lo, hi] = weather_class_range(c);
  Weather w;
  w.rain = static_cast<int>(rng.uniform_int(lo, hi));
  w.fog = static_cast<int>(rng.uniform_int(lo, hi));
  w.wind = static_cast<int>(rng.uniform_int(lo, hi));
  return w;
}

Weather sample_uniform_weather(Rng& rng) {
  Weather w;
  w.rain = static_cast<int>(rng.uniform_int(0, 10));
  w.fog = static_cast<int>(rng.uniform_int(0, 10));
  w.wind = static_cast<int>(rng.uniform_int(0, 10));
  return w;
}

double roughness(std::string_view edge_id) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : edge_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return static_cast<double>(h % 1000) / 999.0;
}

double feasibility_score(double max_slope_deg, double edge_roughness, const Weather& w) {
  const double s = std::min(max_slope_deg, 45.0) / 45.0;
  const double rho = edge_roughness;
  const double r = w.rain / 10.0;
  const double f = w.fog / 10.0;
  const double g = w.wind / 10.0;
  return 0.45 * r * s + 0.20 * f + 0.15 * g * s + 0.10 * rho + 0.15 * rho * (r + f + g) / 3.0;
}

int feasibility_label(double max_slope_deg, std::string_view edge_id, const Weather& w) {
  return feasibility_score(max_slope_deg, roughness(edge_id), w) >= kAvoidThreshold ? 0 : 1;
}

int feasibility_label(const terrain::Edge& edge, const Weather& w) {
  return feasibility_label(edge.max_slope_deg, edge.id, w);
}

}  // namespace agv::envsim

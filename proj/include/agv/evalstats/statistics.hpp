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

#ifndef AGV_EVALSTATS_STATISTICS_HPP_
#define AGV_EVALSTATS_STATISTICS_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace agv::evalstats {

struct Summary {
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // n - 1 divisor; 0 for a single value
};

// Throws std::invalid_argument on an empty input.
Summary aggregate(std::span<const double> values);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  // Differences have zero variance; t and p are then reported as (0, 1).
  bool degenerate = false;
};

// Two-tailed paired t-test on xs - ys. Requires equal lengths, n >= 2.
TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys);

struct ChiSquareResult {
  double chi2 = 0.0;
  double p = 1.0;
  int df = 0;
  // Fewer than two non-empty columns; reported as (0, 1).
  bool degenerate = false;
};

// Intervention bins: 0, 1, 2, 3, >= 4.
inline constexpr int kChiBins = 5;
std::array<int64_t, kChiBins> bin_counts(std::span<const int64_t> counts);

// Pearson independence test on a contingency table. Columns with a zero
// total are dropped before computing df.
ChiSquareResult chi_square_table(const std::vector<std::vector<int64_t>>& table);

// Bins both samples and tests the resulting 2 x 5 table.
ChiSquareResult chi_square_test(std::span<const int64_t> counts_a,
                                std::span<const int64_t> counts_b);

}  // namespace agv::evalstats

#endif  // AGV_EVALSTATS_STATISTICS_HPP_

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

#include "agv/evalstats/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agv/evalstats/special_functions.hpp"

namespace agv::evalstats {

Summary aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate: empty input");
  const size_t n = values.size();
  Summary s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("paired_t_test: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");
  std::vector<double> diff(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) diff[i] = xs[i] - ys[i];
  const Summary s = aggregate(diff);
  TTestResult r;
  r.df = static_cast<int>(diff.size()) - 1;
  if (!(s.std > 0.0)) {
    r.degenerate = true;
    return r;
  }
  r.t = s.mean / (s.std / std::sqrt(static_cast<double>(diff.size())));
  r.p = students_t_sf2(r.t, r.df);
  return r;
}

std::array<int64_t, kChiBins> bin_counts(std::span<const int64_t> counts) {
  std::array<int64_t, kChiBins> bins{};
  for (int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("bin_counts: negative count");
    ++bins[std::min<int64_t>(c, kChiBins - 1)];
  }
  return bins;
}

ChiSquareResult chi_square_table(const std::vector<std::vector<int64_t>>& table) {
  if (table.size() < 2) throw std::invalid_argument("chi_square_table: need at least 2 rows");
  const size_t cols = table.front().size();
  for (const auto& row : table) {
    if (row.size() != cols) throw std::invalid_argument("chi_square_table: ragged table");
    for (int64_t v : row) {
      if (v < 0) throw std::invalid_argument("chi_square_table: negative cell");
    }
  }
  std::vector<double> col_total(cols, 0.0), row_total(table.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < table.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      col_total[j] += table[i][j];
      row_total[i] += table[i][j];
      total += table[i][j];
    }
  }
  int used_cols = 0;
  for (double c : col_total) used_cols += c > 0.0 ? 1 : 0;
  int used_rows = 0;
  for (double r : row_total) used_rows += r > 0.0 ? 1 : 0;

  ChiSquareResult res;
  if (used_cols < 2 || used_rows < 2) {
    res.degenerate = true;
    return res;
  }
  double chi2 = 0.0;
  for (size_t i = 0; i < table.size(); ++i) {
    if (row_total[i] == 0.0) continue;
    for (size_t j = 0; j < cols; ++j) {
      if (col_total[j] == 0.0) continue;
      const double expected = row_total[i] * col_total[j] / total;
      const double diff = table[i][j] - expected;
      chi2 += diff * diff / expected;
    }
  }
  res.chi2 = chi2;
  res.df = (used_rows - 1) * (used_cols - 1);
  res.p = chi_square_sf(chi2, res.df);
  return res;
}

ChiSquareResult chi_square_test(std::span<const int64_t> counts_a,
                                std::span<const int64_t> counts_b) {
  if (counts_a.empty() || counts_b.empty()) {
    throw std::invalid_argument("chi_square_test: empty sample");
  }
  const auto a = bin_counts(counts_a);
  const auto b = bin_counts(counts_b);
  return chi_square_table({{a.begin(), a.end()}, {b.begin(), b.end()}});
}

}  // namespace agv::evalstats

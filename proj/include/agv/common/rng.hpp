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

#ifndef AGV_COMMON_RNG_HPP_
#define AGV_COMMON_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace agv {

// SplitMix64 finalizer. Used to derive independent stream seeds from a base
// seed and a tuple of indices, so parallel work is independent of scheduling.
constexpr uint64_t mix_seed(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> path) {
  uint64_t s = mix_seed(base);
  for (uint64_t p : path) s = mix_seed(s ^ mix_seed(p + 0x632BE59BD9B4E019ULL));
  return s;
}

// Thin wrapper over mt19937_64. The distribution helpers are written out
// instead of using <random> distributions because the latter are not
// specified bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi], unbiased (rejection sampling).
  int64_t uniform_int(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(engine_());
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<int64_t>(r % span);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace agv

#endif  // AGV_COMMON_RNG_HPP_

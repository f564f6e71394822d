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

// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a runtime CPU check.

#include <immintrin.h>

#include "agv/nn/kernels.hpp"

namespace agv::nn::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void affine(const double* w, const double* b, const double* x, double* y, size_t rows,
            size_t cols) {
  const size_t body = cols & ~size_t{3};
  for (size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    __m256d acc = _mm256_setzero_pd();
    size_t c = 0;
    for (; c < body; c += 4) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(x + c), acc);
    }
    double tail = 0.0;
    for (; c < cols; ++c) tail += row[c] * x[c];
    y[r] = b[r] + (hsum(acc) + tail);
  }
}

void affine_transposed(const double* w, const double* delta, double* out, size_t rows,
                       size_t cols) {
  const size_t body = cols & ~size_t{3};
  for (size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    const __m256d d = _mm256_set1_pd(delta[r]);
    size_t c = 0;
    for (; c < body; c += 4) {
      _mm256_storeu_pd(out + c,
                       _mm256_fmadd_pd(_mm256_loadu_pd(row + c), d, _mm256_loadu_pd(out + c)));
    }
    for (; c < cols; ++c) out[c] += row[c] * delta[r];
  }
}

void rank1_update(double* w, const double* delta, const double* x, double scale, size_t rows,
                  size_t cols) {
  const size_t body = cols & ~size_t{3};
  for (size_t r = 0; r < rows; ++r) {
    double* row = w + r * cols;
    const double ds = scale * delta[r];
    const __m256d d = _mm256_set1_pd(ds);
    size_t c = 0;
    for (; c < body; c += 4) {
      _mm256_storeu_pd(row + c,
                       _mm256_fmadd_pd(d, _mm256_loadu_pd(x + c), _mm256_loadu_pd(row + c)));
    }
    for (; c < cols; ++c) row[c] += ds * x[c];
  }
}

void axpy(double* y, const double* x, double a, size_t n) {
  const size_t body = n & ~size_t{3};
  const __m256d va = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i < body; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void momentum_step(double* theta, double* velocity, const double* grad, double lr,
                   double momentum, size_t n) {
  const size_t body = n & ~size_t{3};
  const __m256d vm = _mm256_set1_pd(momentum);
  const __m256d vlr = _mm256_set1_pd(-lr);
  size_t i = 0;
  for (; i < body; i += 4) {
    const __m256d v = _mm256_fmadd_pd(vlr, _mm256_loadu_pd(grad + i),
                                      _mm256_mul_pd(vm, _mm256_loadu_pd(velocity + i)));
    _mm256_storeu_pd(velocity + i, v);
    _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), v));
  }
  for (; i < n; ++i) {
    velocity[i] = momentum * velocity[i] - lr * grad[i];
    theta[i] += velocity[i];
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Backend::kAvx2, affine,        affine_transposed,
                                 rank1_update,   axpy,          momentum_step};
  return &table;
}

}  // namespace agv::nn::kernels

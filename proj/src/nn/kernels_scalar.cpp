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

#include "agv/nn/kernels.hpp"

namespace agv::nn::kernels {
namespace {

void affine(const double* w, const double* b, const double* x, double* y, size_t rows,
            size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    double acc = 0.0;
    for (size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] = b[r] + acc;
  }
}

void affine_transposed(const double* w, const double* delta, double* out, size_t rows,
                       size_t cols) {
  for (size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    const double d = delta[r];
    for (size_t c = 0; c < cols; ++c) out[c] += row[c] * d;
  }
}

void rank1_update(double* w, const double* delta, const double* x, double scale, size_t rows,
                  size_t cols) {
  for (size_t r = 0; r < rows; ++r) {
    double* row = w + r * cols;
    const double d = scale * delta[r];
    for (size_t c = 0; c < cols; ++c) row[c] += d * x[c];
  }
}

void axpy(double* y, const double* x, double a, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void momentum_step(double* theta, double* velocity, const double* grad, double lr,
                   double momentum, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    velocity[i] = momentum * velocity[i] - lr * grad[i];
    theta[i] += velocity[i];
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::kScalar, affine,        affine_transposed,
                                 rank1_update,     axpy,          momentum_step};
  return table;
}

}  // namespace agv::nn::kernels

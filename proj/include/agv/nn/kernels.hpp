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

#ifndef AGV_NN_KERNELS_HPP_
#define AGV_NN_KERNELS_HPP_

#include <cstddef>
#include <string_view>

// Dense-layer inner loops. Every kernel has a scalar reference version and,
// on x86-64 builds, an AVX2+FMA version. The active table is chosen once at
// startup from CPU features; AGV_SIMD=scalar|avx2 in the environment or
// set_backend() overrides the choice. Matrices are row-major, rows x cols.

namespace agv::nn::kernels {

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  Backend backend;
  // y[r] = b[r] + sum_c w[r, c] * x[c]
  void (*affine)(const double* w, const double* b, const double* x, double* y, size_t rows,
                 size_t cols);
  // out[c] = sum_r w[r, c] * delta[r]
  void (*affine_transposed)(const double* w, const double* delta, double* out, size_t rows,
                            size_t cols);
  // w[r, c] += scale * delta[r] * x[c]
  void (*rank1_update)(double* w, const double* delta, const double* x, double scale, size_t rows,
                       size_t cols);
  // y += a * x
  void (*axpy)(double* y, const double* x, double a, size_t n);
  // velocity = momentum * velocity - lr * grad; theta += velocity
  void (*momentum_step)(double* theta, double* velocity, const double* grad, double lr,
                        double momentum, size_t n);
};

const KernelTable& scalar_kernels();
// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();
bool backend_available(Backend b);

const KernelTable& active();
Backend active_backend();
// Throws std::invalid_argument if the backend is unavailable on this CPU/build.
void set_backend(Backend b);

std::string_view backend_name(Backend b);

}  // namespace agv::nn::kernels

#endif  // AGV_NN_KERNELS_HPP_

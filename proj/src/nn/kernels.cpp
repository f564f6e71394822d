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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace agv::nn::kernels {

#ifndef AGV_HAVE_AVX2_KERNELS
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
      return avx2_kernels() != nullptr && cpu_supports_avx2();
  }
  return false;
}

std::string_view backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("AGV_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return &scalar_kernels();
    if (choice == "avx2" && backend_available(Backend::kAvx2)) return avx2_kernels();
  }
  if (backend_available(Backend::kAvx2)) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Backend active_backend() { return active().backend; }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) +
                                "' is not available");
  }
  current().store(b == Backend::kAvx2 ? avx2_kernels() : &scalar_kernels(),
                  std::memory_order_release);
}

}  // namespace agv::nn::kernels

// Copyright 2026 The tactile-sim Authors
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

#include <algorithm>
#include <cmath>

#include "tactile/simd/gemm_reference.hpp"
#include "tactile/simd/kernels.hpp"

namespace tactile::simd {
namespace {

void sgemm_scalar(bool ta, bool tb, int m, int n, int k, float alpha, const float* a, int lda,
                  const float* b, int ldb, float beta, float* c, int ldc) {
  gemm_reference<float>(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
}

void penetration_scalar(const float* reference, const float* current, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(reference[i] - current[i], 0.0f);
}

void quantize_scalar(const float* pen, std::size_t n, float inv_max, float tolerance,
                     std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    float x = pen[i] * inv_max;
    if (!(x >= tolerance)) x = 0.0f;
    x = std::min(x, 1.0f);
    const float v = std::floor(x * 255.0f + 0.5f);
    out[i] = static_cast<std::uint8_t>(static_cast<int>(v));
  }
}

void axpy_scalar(std::size_t n, float a, const float* x, float* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

float dot_scalar(std::size_t n, const float* x, const float* y) {
  float s = 0.0f;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{Isa::kScalar, sgemm_scalar, penetration_scalar, quantize_scalar,
                               axpy_scalar, dot_scalar};
}  // namespace detail

}  // namespace tactile::simd

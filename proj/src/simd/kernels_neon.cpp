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

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "tactile/simd/gemm_reference.hpp"
#include "tactile/simd/kernels.hpp"

namespace tactile::simd {
namespace {

float dot_neon(std::size_t n, const float* x, const float* y) {
  float32x4_t s0 = vdupq_n_f32(0.0f);
  float32x4_t s1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = vfmaq_f32(s0, vld1q_f32(x + i), vld1q_f32(y + i));
    s1 = vfmaq_f32(s1, vld1q_f32(x + i + 4), vld1q_f32(y + i + 4));
  }
  float s = vaddvq_f32(vaddq_f32(s0, s1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_neon(std::size_t n, float a, const float* x, float* y) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(y + i, vaddq_f32(vld1q_f32(y + i), vmulq_f32(va, vld1q_f32(x + i))));
  for (; i < n; ++i) y[i] += a * x[i];
}

// Row-times-matrix formulation: C[i, :] accumulates A(i, p) * B[p, :] rows.
// Transposed B falls back to the reference loop.
void sgemm_neon(bool ta, bool tb, int m, int n, int k, float alpha, const float* a, int lda,
                const float* b, int ldb, float beta, float* c, int ldc) {
  if (tb) {
    gemm_reference<float>(ta, tb, m, n, k, alpha, a, lda, b, ldb, beta, c, ldc);
    return;
  }
  for (int i = 0; i < m; ++i) {
    float* row = c + i * ldc;
    if (beta == 0.0f) {
      std::fill(row, row + n, 0.0f);
    } else if (beta != 1.0f) {
      for (int j = 0; j < n; ++j) row[j] *= beta;
    }
    for (int p = 0; p < k; ++p) {
      const float av = alpha * (ta ? a[p * lda + i] : a[i * lda + p]);
      axpy_neon(static_cast<std::size_t>(n), av, b + p * ldb, row);
    }
  }
}

void penetration_neon(const float* reference, const float* current, float* out, std::size_t n) {
  const float32x4_t zero = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vst1q_f32(out + i, vmaxq_f32(vsubq_f32(vld1q_f32(reference + i), vld1q_f32(current + i)), zero));
  for (; i < n; ++i) out[i] = std::max(reference[i] - current[i], 0.0f);
}

void quantize_neon(const float* pen, std::size_t n, float inv_max, float tolerance,
                   std::uint8_t* out) {
  const float32x4_t vinv = vdupq_n_f32(inv_max);
  const float32x4_t vtol = vdupq_n_f32(tolerance);
  const float32x4_t one = vdupq_n_f32(1.0f);
  const float32x4_t scale = vdupq_n_f32(255.0f);
  const float32x4_t half = vdupq_n_f32(0.5f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float32x4_t x = vmulq_f32(vld1q_f32(pen + i), vinv);
    x = vreinterpretq_f32_u32(vandq_u32(vreinterpretq_u32_f32(x), vcgeq_f32(x, vtol)));
    x = vminq_f32(x, one);
    const float32x4_t v = vrndmq_f32(vaddq_f32(vmulq_f32(x, scale), half));
    const uint32x4_t u = vcvtq_u32_f32(v);
    out[i] = static_cast<std::uint8_t>(vgetq_lane_u32(u, 0));
    out[i + 1] = static_cast<std::uint8_t>(vgetq_lane_u32(u, 1));
    out[i + 2] = static_cast<std::uint8_t>(vgetq_lane_u32(u, 2));
    out[i + 3] = static_cast<std::uint8_t>(vgetq_lane_u32(u, 3));
  }
  for (; i < n; ++i) {
    float x = pen[i] * inv_max;
    if (!(x >= tolerance)) x = 0.0f;
    x = std::min(x, 1.0f);
    out[i] = static_cast<std::uint8_t>(static_cast<int>(std::floor(x * 255.0f + 0.5f)));
  }
}

}  // namespace

namespace detail {
const KernelTable kNeonTable{Isa::kNeon, sgemm_neon, penetration_neon, quantize_neon, axpy_neon,
                             dot_neon};
}  // namespace detail

}  // namespace tactile::simd

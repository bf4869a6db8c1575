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

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "tactile/simd/kernels.hpp"

namespace tactile::simd {
namespace {

constexpr int kMr = 6;
constexpr int kNr = 16;
constexpr int kKc = 256;
constexpr int kMc = 96;
constexpr int kNc = 1024;

struct Operand {
  const float* data;
  int ld;
  bool trans;
  // Logical element (row, col) of op(X).
  float at(int r, int c) const { return trans ? data[c * ld + r] : data[r * ld + c]; }
};

// Packs op(A)[i0:i0+mc, p0:p0+kc] into row panels of kMr, zero padded.
void pack_a(const Operand& a, int i0, int mc, int p0, int kc, float* out) {
  for (int ir = 0; ir < mc; ir += kMr) {
    const int mr = std::min(kMr, mc - ir);
    for (int p = 0; p < kc; ++p) {
      for (int r = 0; r < mr; ++r) out[r] = a.at(i0 + ir + r, p0 + p);
      for (int r = mr; r < kMr; ++r) out[r] = 0.0f;
      out += kMr;
    }
  }
}

// Packs op(B)[p0:p0+kc, j0:j0+nc] into column panels of kNr, zero padded.
void pack_b(const Operand& b, int p0, int kc, int j0, int nc, float* out) {
  for (int jr = 0; jr < nc; jr += kNr) {
    const int nr = std::min(kNr, nc - jr);
    for (int p = 0; p < kc; ++p) {
      if (!b.trans && nr == kNr) {
        std::memcpy(out, b.data + (p0 + p) * b.ld + j0 + jr, sizeof(float) * kNr);
      } else {
        for (int c = 0; c < nr; ++c) out[c] = b.at(p0 + p, j0 + jr + c);
        for (int c = nr; c < kNr; ++c) out[c] = 0.0f;
      }
      out += kNr;
    }
  }
}

void micro_kernel(int kc, const float* ap, const float* bp, float alpha, float* c, int ldc, int mr,
                  int nr) {
  __m256 acc[kMr][2];
  for (int r = 0; r < kMr; ++r) acc[r][0] = acc[r][1] = _mm256_setzero_ps();
  for (int p = 0; p < kc; ++p) {
    const __m256 b0 = _mm256_load_ps(bp);
    const __m256 b1 = _mm256_load_ps(bp + 8);
    for (int r = 0; r < kMr; ++r) {
      const __m256 av = _mm256_broadcast_ss(ap + r);
      acc[r][0] = _mm256_fmadd_ps(av, b0, acc[r][0]);
      acc[r][1] = _mm256_fmadd_ps(av, b1, acc[r][1]);
    }
    ap += kMr;
    bp += kNr;
  }
  const __m256 va = _mm256_set1_ps(alpha);
  if (mr == kMr && nr == kNr) {
    for (int r = 0; r < kMr; ++r) {
      float* row = c + r * ldc;
      _mm256_storeu_ps(row, _mm256_fmadd_ps(va, acc[r][0], _mm256_loadu_ps(row)));
      _mm256_storeu_ps(row + 8, _mm256_fmadd_ps(va, acc[r][1], _mm256_loadu_ps(row + 8)));
    }
    return;
  }
  alignas(32) float tmp[kMr][kNr];
  for (int r = 0; r < kMr; ++r) {
    _mm256_store_ps(tmp[r], _mm256_mul_ps(va, acc[r][0]));
    _mm256_store_ps(tmp[r] + 8, _mm256_mul_ps(va, acc[r][1]));
  }
  for (int r = 0; r < mr; ++r)
    for (int col = 0; col < nr; ++col) c[r * ldc + col] += tmp[r][col];
}

void sgemm_avx2(bool ta, bool tb, int m, int n, int k, float alpha, const float* a, int lda,
                const float* b, int ldb, float beta, float* c, int ldc) {
  if (m <= 0 || n <= 0) return;
  for (int i = 0; i < m; ++i) {
    float* row = c + i * ldc;
    if (beta == 0.0f) {
      std::fill(row, row + n, 0.0f);
    } else if (beta != 1.0f) {
      for (int j = 0; j < n; ++j) row[j] *= beta;
    }
  }
  if (k <= 0 || alpha == 0.0f) return;

  const Operand opa{a, lda, ta};
  const Operand opb{b, ldb, tb};
  thread_local std::vector<float> a_buf_storage;
  thread_local std::vector<float> b_buf_storage;
  const int nc_max = std::min(kNc, n);
  const int kc_max = std::min(kKc, k);
  const std::size_t a_need = static_cast<std::size_t>(kMc + kMr) * kc_max + 8;
  const std::size_t b_need = static_cast<std::size_t>(nc_max + kNr) * kc_max + 8;
  if (a_buf_storage.size() < a_need) a_buf_storage.resize(a_need);
  if (b_buf_storage.size() < b_need) b_buf_storage.resize(b_need);
  auto align32 = [](float* p) {
    auto v = reinterpret_cast<std::uintptr_t>(p);
    return reinterpret_cast<float*>((v + 31) & ~static_cast<std::uintptr_t>(31));
  };
  float* a_buf = align32(a_buf_storage.data());
  float* b_buf = align32(b_buf_storage.data());

  for (int j0 = 0; j0 < n; j0 += kNc) {
    const int nc = std::min(kNc, n - j0);
    for (int p0 = 0; p0 < k; p0 += kKc) {
      const int kc = std::min(kKc, k - p0);
      pack_b(opb, p0, kc, j0, nc, b_buf);
      for (int i0 = 0; i0 < m; i0 += kMc) {
        const int mc = std::min(kMc, m - i0);
        pack_a(opa, i0, mc, p0, kc, a_buf);
        for (int jr = 0; jr < nc; jr += kNr) {
          const int nr = std::min(kNr, nc - jr);
          const float* bp = b_buf + static_cast<std::size_t>(jr / kNr) * kNr * kc;
          for (int ir = 0; ir < mc; ir += kMr) {
            const int mr = std::min(kMr, mc - ir);
            const float* ap = a_buf + static_cast<std::size_t>(ir / kMr) * kMr * kc;
            micro_kernel(kc, ap, bp, alpha, c + (i0 + ir) * ldc + j0 + jr, ldc, mr, nr);
          }
        }
      }
    }
  }
}

void penetration_avx2(const float* reference, const float* current, float* out, std::size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 d = _mm256_sub_ps(_mm256_loadu_ps(reference + i), _mm256_loadu_ps(current + i));
    _mm256_storeu_ps(out + i, _mm256_max_ps(d, zero));
  }
  for (; i < n; ++i) out[i] = std::max(reference[i] - current[i], 0.0f);
}

void quantize_avx2(const float* pen, std::size_t n, float inv_max, float tolerance,
                   std::uint8_t* out) {
  const __m256 vinv = _mm256_set1_ps(inv_max);
  const __m256 vtol = _mm256_set1_ps(tolerance);
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 scale = _mm256_set1_ps(255.0f);
  const __m256 half = _mm256_set1_ps(0.5f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 x = _mm256_mul_ps(_mm256_loadu_ps(pen + i), vinv);
    x = _mm256_and_ps(x, _mm256_cmp_ps(x, vtol, _CMP_GE_OQ));
    x = _mm256_min_ps(x, one);
    const __m256 v = _mm256_floor_ps(_mm256_add_ps(_mm256_mul_ps(x, scale), half));
    const __m256i i32 = _mm256_cvttps_epi32(v);
    const __m128i u16 =
        _mm_packus_epi32(_mm256_castsi256_si128(i32), _mm256_extracti128_si256(i32, 1));
    _mm_storel_epi64(reinterpret_cast<__m128i*>(out + i), _mm_packus_epi16(u16, u16));
  }
  for (; i < n; ++i) {
    float x = pen[i] * inv_max;
    if (!(x >= tolerance)) x = 0.0f;
    x = std::min(x, 1.0f);
    out[i] = static_cast<std::uint8_t>(static_cast<int>(std::floor(x * 255.0f + 0.5f)));
  }
}

void axpy_avx2(std::size_t n, float a, const float* x, float* y) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 prod = _mm256_mul_ps(va, _mm256_loadu_ps(x + i));
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

float dot_avx2(std::size_t n, const float* x, const float* y) {
  __m256 s0 = _mm256_setzero_ps();
  __m256 s1 = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i), s0);
    s1 = _mm256_fmadd_ps(_mm256_loadu_ps(x + i + 8), _mm256_loadu_ps(y + i + 8), s1);
  }
  alignas(32) float lanes[8];
  _mm256_store_ps(lanes, _mm256_add_ps(s0, s1));
  float s = 0.0f;
  for (float v : lanes) s += v;
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{Isa::kAvx2, sgemm_avx2, penetration_avx2, quantize_avx2, axpy_avx2,
                             dot_avx2};
}  // namespace detail

}  // namespace tactile::simd

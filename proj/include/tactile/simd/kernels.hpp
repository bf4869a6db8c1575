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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace tactile::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Function table for the data-parallel inner loops. Every entry has a
// scalar reference implementation; SIMD variants must match it bit-exactly
// for the elementwise kernels and within rounding for the reductions
// (sgemm, dot). All matrices are row-major.
struct KernelTable {
  Isa isa;

  // C[m x n] = alpha * op(A) * op(B) + beta * C. op(A) is m x k, op(B) is
  // k x n. With beta == 0, C is overwritten (never read).
  void (*sgemm)(bool trans_a, bool trans_b, int m, int n, int k, float alpha, const float* a,
                int lda, const float* b, int ldb, float beta, float* c, int ldc);

  // out[i] = max(reference[i] - current[i], 0).
  void (*penetration)(const float* reference, const float* current, float* out, std::size_t n);

  // Tactile intensity quantization:
  //   x = pen[i] * inv_max;  x < tolerance -> 0;  x = min(x, 1);
  //   out[i] = floor(255 * x + 0.5)
  void (*quantize)(const float* pen, std::size_t n, float inv_max, float tolerance,
                   std::uint8_t* out);

  // y += a * x
  void (*axpy)(std::size_t n, float a, const float* x, float* y);

  float (*dot)(std::size_t n, const float* x, const float* y);
};

// Active table: the best ISA supported by this CPU, unless overridden by
// set_isa() or the TACTILE_SIMD environment variable ("scalar", "avx2",
// "neon") at first use.
const KernelTable& kernels();

// Table for a specific ISA, or nullptr when it is not compiled in or not
// supported by the running CPU.
const KernelTable* kernels_for(Isa isa);

Isa detect_isa();

// Overrides the active table. Returns false (and leaves the active table
// unchanged) when the ISA is unavailable.
bool set_isa(Isa isa);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
#if defined(__aarch64__)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace tactile::simd

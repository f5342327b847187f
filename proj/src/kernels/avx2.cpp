// Copyright 2026 The qdist Authors
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

// Compiled with -mavx2; only reached through the dispatcher after a CPUID check.

#include "qdist/kernels.hpp"

#if QDIST_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace qdist::kernels::avx2 {

namespace {

inline double fold(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

double masked_row_sum(const double* row, const std::int32_t* labels,
                      std::size_t n, std::int32_t label) {
  const __m128i want = _mm_set1_epi32(label);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i lab =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(labels + i));
    // 32-bit all-ones lanes sign-extend to 64-bit all-ones lanes.
    const __m256i mask = _mm256_cvtepi32_epi64(_mm_cmpeq_epi32(lab, want));
    const __m256d vals = _mm256_loadu_pd(row + i);
    acc = _mm256_add_pd(acc, _mm256_and_pd(vals, _mm256_castsi256_pd(mask)));
  }
  double sum = fold(acc);
  for (; i < n; ++i) {
    if (labels[i] == label) sum += row[i];
  }
  return sum;
}

double gather_dot(const double* a, const double* b, const std::int32_t* index,
                  std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i idx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + i));
    const __m256d gathered = _mm256_i32gather_pd(b, idx, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), gathered));
  }
  double sum = fold(acc);
  for (; i < n; ++i) sum += a[i] * b[index[i]];
  return sum;
}

}  // namespace qdist::kernels::avx2

#endif

// Copyright 2026 The covertkey Authors
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

// Compiled with -mavx2 -mfma -ffp-contract=off; do not call unless the CPU
// reports AVX2. Contraction is off so the compiler cannot fuse the explicit
// mul+add pairs below into FMAs behind our back.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "covertkey/kernels.hpp"

namespace covertkey::kernels::avx2 {

void scale(double* dst, const double* src, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(vc, _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i) dst[i] = c * src[i];
}

void axpy(double* dst, const double* src, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // plain mul+add, not FMA: the scalar path rounds twice and results
    // must match bit for bit
    __m256d d = _mm256_loadu_pd(dst + i);
    __m256d s = _mm256_mul_pd(vc, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(d, s));
  }
  for (; i < n; ++i) dst[i] += c * src[i];
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  // lane j accumulated indices i+j, matching scalar's s0..s3
  double tail = 0.0;
  for (; i < n; ++i) tail += std::fabs(a[i] - b[i]);
  return ((lanes[0] + lanes[2]) + (lanes[1] + lanes[3])) + tail;
}

}  // namespace covertkey::kernels::avx2

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

#include "covertkey/kernels.hpp"

#include <cmath>

namespace covertkey::kernels {

namespace scalar {

void scale(double* dst, const double* src, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = c * src[i];
}

void axpy(double* dst, const double* src, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += c * src[i];
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  // Four independent accumulators, same reduction tree as the AVX2 variant
  // uses per lane group, so both paths sum in the same order.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += std::fabs(a[i + 0] - b[i + 0]);
    s1 += std::fabs(a[i + 1] - b[i + 1]);
    s2 += std::fabs(a[i + 2] - b[i + 2]);
    s3 += std::fabs(a[i + 3] - b[i + 3]);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += std::fabs(a[i] - b[i]);
  return ((s0 + s2) + (s1 + s3)) + tail;
}

}  // namespace scalar

namespace {

struct Dispatch {
  void (*scale)(double*, const double*, double, std::size_t);
  void (*axpy)(double*, const double*, double, std::size_t);
  double (*sum_abs_diff)(const double*, const double*, std::size_t);
  const char* name;
};

Dispatch pick() {
#if defined(COVERTKEY_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
  if (__builtin_cpu_supports("avx2")) {
    return {avx2::scale, avx2::axpy, avx2::sum_abs_diff, "avx2"};
  }
#endif
  return {scalar::scale, scalar::axpy, scalar::sum_abs_diff, "scalar"};
}

const Dispatch& active() {
  static const Dispatch d = pick();
  return d;
}

}  // namespace

void scale(double* dst, const double* src, double c, std::size_t n) {
  active().scale(dst, src, c, n);
}

void axpy(double* dst, const double* src, double c, std::size_t n) {
  active().axpy(dst, src, c, n);
}

double sum_abs_diff(const double* a, const double* b, std::size_t n) {
  return active().sum_abs_diff(a, b, n);
}

const char* active_variant() { return active().name; }

}  // namespace covertkey::kernels

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

#pragma once

#include <cstddef>

namespace covertkey::kernels {

// Hot loops of the enumeration oracle: product-distribution expansion and
// L1-distance reduction over large double arrays. Scalar reference versions
// always exist; an AVX2 variant is selected at runtime when the CPU supports
// it. Both variants must produce identical results on identical inputs
// (additions are performed in the same order).

// dst[i] = c * src[i]
void scale(double* dst, const double* src, double c, std::size_t n);
// dst[i] += c * src[i]
void axpy(double* dst, const double* src, double c, std::size_t n);
// sum_i |a[i] - b[i]|
double sum_abs_diff(const double* a, const double* b, std::size_t n);

namespace scalar {
void scale(double* dst, const double* src, double c, std::size_t n);
void axpy(double* dst, const double* src, double c, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(COVERTKEY_BUILD_AVX2)
namespace avx2 {
void scale(double* dst, const double* src, double c, std::size_t n);
void axpy(double* dst, const double* src, double c, std::size_t n);
double sum_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

// Which variant the dispatcher picked, for reporting/tests.
const char* active_variant();

}  // namespace covertkey::kernels

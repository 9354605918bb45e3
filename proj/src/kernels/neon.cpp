// Copyright 2026 The reviewkit Authors.
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

#include "reviewkit/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace reviewkit::kernels::neon {

#if defined(__aarch64__)

CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  float64x2_t dot = vdupq_n_f64(0.0);
  float64x2_t na = vdupq_n_f64(0.0);
  float64x2_t nb = vdupq_n_f64(0.0);
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a.data() + i);
    const float64x2_t vb = vld1q_f64(b.data() + i);
    dot = vfmaq_f64(dot, va, vb);
    na = vfmaq_f64(na, va, va);
    nb = vfmaq_f64(nb, vb, vb);
  }
  CosineTerms t{vaddvq_f64(dot), vaddvq_f64(na), vaddvq_f64(nb)};
  for (; i < n; ++i) {
    t.dot += a[i] * b[i];
    t.norm_a_sq += a[i] * a[i];
    t.norm_b_sq += b[i] * b[i];
  }
  return t;
}

#else

CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  return scalar::cosine_terms(a, b);
}

#endif

}  // namespace reviewkit::kernels::neon

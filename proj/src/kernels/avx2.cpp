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

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define REVIEWKIT_HAVE_AVX2 1
#endif

namespace reviewkit::kernels::avx2 {

#if defined(REVIEWKIT_HAVE_AVX2)

namespace {

inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  __m256d dot = _mm256_setzero_pd();
  __m256d na = _mm256_setzero_pd();
  __m256d nb = _mm256_setzero_pd();
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    const __m256d vb = _mm256_loadu_pd(b.data() + i);
    dot = _mm256_fmadd_pd(va, vb, dot);
    na = _mm256_fmadd_pd(va, va, na);
    nb = _mm256_fmadd_pd(vb, vb, nb);
  }
  CosineTerms t{hsum(dot), hsum(na), hsum(nb)};
  for (; i < n; ++i) {
    t.dot += a[i] * b[i];
    t.norm_a_sq += a[i] * a[i];
    t.norm_b_sq += b[i] * b[i];
  }
  return t;
}

#else

// Not built for this target; dispatch never selects it.
CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  return scalar::cosine_terms(a, b);
}

#endif

}  // namespace reviewkit::kernels::avx2

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

namespace reviewkit::kernels::scalar {

CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  CosineTerms t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.dot += a[i] * b[i];
    t.norm_a_sq += a[i] * a[i];
    t.norm_b_sq += b[i] * b[i];
  }
  return t;
}

}  // namespace reviewkit::kernels::scalar

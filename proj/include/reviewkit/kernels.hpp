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

#pragma once

#include <cstddef>
#include <span>

// Vector kernels behind embedding similarity. Every kernel has a scalar
// reference; wider variants are selected at runtime from the CPU features.
namespace reviewkit::kernels {

struct CosineTerms {
  double dot = 0.0;
  double norm_a_sq = 0.0;
  double norm_b_sq = 0.0;
};

enum class Isa { kScalar, kAvx2, kNeon };

const char* to_string(Isa isa) noexcept;

bool isa_available(Isa isa) noexcept;

// Widest available ISA, unless REVIEWKIT_ISA=scalar|avx2|neon names an
// available one. Resolved once per process.
Isa active_isa() noexcept;

// dot(a, b), |a|^2 and |b|^2 in one pass. Requires a.size() == b.size().
CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept;
CosineTerms cosine_terms(Isa isa, std::span<const double> a, std::span<const double> b) noexcept;

namespace scalar {
CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept;
}
namespace avx2 {
CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept;
}
namespace neon {
CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept;
}

}  // namespace reviewkit::kernels

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

#include <cstdlib>
#include <string_view>

#include "reviewkit/kernels.hpp"

namespace reviewkit::kernels {

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "scalar";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa resolve() noexcept {
  if (const char* forced = std::getenv("REVIEWKIT_ISA")) {
    const std::string_view name(forced);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

}  // namespace

Isa active_isa() noexcept {
  static const Isa isa = resolve();
  return isa;
}

CosineTerms cosine_terms(Isa isa, std::span<const double> a, std::span<const double> b) noexcept {
  if (!isa_available(isa)) isa = Isa::kScalar;
  switch (isa) {
    case Isa::kAvx2: return avx2::cosine_terms(a, b);
    case Isa::kNeon: return neon::cosine_terms(a, b);
    case Isa::kScalar: break;
  }
  return scalar::cosine_terms(a, b);
}

CosineTerms cosine_terms(std::span<const double> a, std::span<const double> b) noexcept {
  return cosine_terms(active_isa(), a, b);
}

}  // namespace reviewkit::kernels

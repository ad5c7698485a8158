// Copyright 2026 The PathWalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <string_view>

#include "kernels_internal.h"

namespace pathwalk::simd {
namespace {

bool cpu_has_avx2() {
#if defined(PATHWALK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool scalar_forced() {
  const char* env = std::getenv("PATHWALK_SIMD");
  return env != nullptr && std::string_view(env) == "scalar";
}

template <typename Real>
const KernelTable<Real>* avx2_table();

template <>
const KernelTable<float>* avx2_table<float>() {
#if defined(PATHWALK_HAVE_AVX2)
  return detail::avx2_float_table();
#else
  return nullptr;
#endif
}

template <>
const KernelTable<double>* avx2_table<double>() {
#if defined(PATHWALK_HAVE_AVX2)
  return detail::avx2_double_table();
#else
  return nullptr;
#endif
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

template <typename Real>
const KernelTable<Real>* avx2_kernels() {
  static const bool supported = cpu_has_avx2();
  return supported ? avx2_table<Real>() : nullptr;
}

template <typename Real>
const KernelTable<Real>& kernels() {
  static const KernelTable<Real>& selected = [] () -> const KernelTable<Real>& {
    if (!scalar_forced()) {
      if (const auto* fast = avx2_kernels<Real>()) return *fast;
    }
    return scalar_kernels<Real>();
  }();
  return selected;
}

Isa active_isa() { return kernels<float>().isa; }

template const KernelTable<float>* avx2_kernels<float>();
template const KernelTable<double>* avx2_kernels<double>();
template const KernelTable<float>& kernels<float>();
template const KernelTable<double>& kernels<double>();

}  // namespace pathwalk::simd

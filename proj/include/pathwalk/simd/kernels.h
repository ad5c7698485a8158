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

#pragma once

#include <cstddef>
#include <string_view>

namespace pathwalk::simd {

// Instruction-set variants of the dense inner loops. The scalar table is the
// reference; every other table must agree with it up to rounding.
enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

template <typename Real>
struct AdamCoefficients {
  Real learning_rate;
  Real beta1;
  Real beta2;
  Real epsilon;
  Real bias_correction1;  // 1 - beta1^t
  Real bias_correction2;  // 1 - beta2^t
  Real l2;                // folded into the gradient as l2 * theta
};

template <typename Real>
struct KernelTable {
  Isa isa;
  // y += a * x
  void (*axpy)(Real a, const Real* x, Real* y, std::size_t n);
  Real (*dot)(const Real* x, const Real* y, std::size_t n);
  // y[c] += sum_r x[r] * w[r * cols + c]
  void (*gemv_accumulate)(const Real* x, std::size_t rows, const Real* w, std::size_t cols, Real* y);
  // out[r] = sum_c w[r * cols + c] * v[c]
  void (*gemv_transposed)(const Real* w, std::size_t rows, std::size_t cols, const Real* v, Real* out);
  // w[r * cols + c] += x[r] * v[c]
  void (*rank1_update)(const Real* x, std::size_t rows, const Real* v, std::size_t cols, Real* w);
  // One bias-corrected Adam step on n parameters with g = grad + l2 * theta.
  // Returns false if any effective gradient was non-finite.
  bool (*adam_update)(Real* theta, const Real* grad, Real* m, Real* v, std::size_t n,
                      const AdamCoefficients<Real>& c);
};

template <typename Real>
const KernelTable<Real>& scalar_kernels();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
template <typename Real>
const KernelTable<Real>* avx2_kernels();

// The table chosen at first use: AVX2 when available, unless the environment
// variable PATHWALK_SIMD=scalar forces the reference path.
template <typename Real>
const KernelTable<Real>& kernels();

Isa active_isa();

}  // namespace pathwalk::simd

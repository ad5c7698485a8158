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

#include <cmath>

#include "kernels_internal.h"

namespace pathwalk::simd {
namespace {

template <typename Real>
void axpy(Real a, const Real* x, Real* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <typename Real>
Real dot(const Real* x, const Real* y, std::size_t n) {
  Real sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

template <typename Real>
void gemv_accumulate(const Real* x, std::size_t rows, const Real* w, std::size_t cols, Real* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Real xr = x[r];
    if (xr == Real(0)) continue;
    axpy(xr, w + r * cols, y, cols);
  }
}

template <typename Real>
void gemv_transposed(const Real* w, std::size_t rows, std::size_t cols, const Real* v, Real* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(w + r * cols, v, cols);
}

template <typename Real>
void rank1_update(const Real* x, std::size_t rows, const Real* v, std::size_t cols, Real* w) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Real xr = x[r];
    if (xr == Real(0)) continue;
    axpy(xr, v, w + r * cols, cols);
  }
}

template <typename Real>
bool adam_update(Real* theta, const Real* grad, Real* m, Real* v, std::size_t n, const AdamCoefficients<Real>& c) {
  bool finite = true;
  const Real one_minus_b1 = Real(1) - c.beta1;
  const Real one_minus_b2 = Real(1) - c.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    const Real g = grad[i] + c.l2 * theta[i];
    finite &= std::isfinite(g);
    m[i] = c.beta1 * m[i] + one_minus_b1 * g;
    v[i] = c.beta2 * v[i] + one_minus_b2 * (g * g);
    const Real m_hat = m[i] / c.bias_correction1;
    const Real v_hat = v[i] / c.bias_correction2;
    theta[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
  return finite;
}

template <typename Real>
constexpr KernelTable<Real> make_table() {
  return {Isa::kScalar,          &axpy<Real>,         &dot<Real>,        &gemv_accumulate<Real>,
          &gemv_transposed<Real>, &rank1_update<Real>, &adam_update<Real>};
}

constexpr KernelTable<float> kScalarFloat = make_table<float>();
constexpr KernelTable<double> kScalarDouble = make_table<double>();

}  // namespace

template <>
const KernelTable<float>& scalar_kernels<float>() {
  return kScalarFloat;
}

template <>
const KernelTable<double>& scalar_kernels<double>() {
  return kScalarDouble;
}

}  // namespace pathwalk::simd

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

// Compiled with -mavx2 -mfma. Nothing in here may be reachable unless the
// dispatcher has confirmed both features at runtime.

#include <immintrin.h>

#include "kernels_internal.h"

namespace pathwalk::simd {
namespace {

template <typename Real>
struct Vec;

template <>
struct Vec<float> {
  using Reg = __m256;
  static constexpr std::size_t kLanes = 8;
  static Reg zero() { return _mm256_setzero_ps(); }
  static Reg set1(float a) { return _mm256_set1_ps(a); }
  static Reg load(const float* p) { return _mm256_loadu_ps(p); }
  static void store(float* p, Reg v) { _mm256_storeu_ps(p, v); }
  static Reg fmadd(Reg a, Reg b, Reg c) { return _mm256_fmadd_ps(a, b, c); }
  static Reg add(Reg a, Reg b) { return _mm256_add_ps(a, b); }
  static Reg sub(Reg a, Reg b) { return _mm256_sub_ps(a, b); }
  static Reg mul(Reg a, Reg b) { return _mm256_mul_ps(a, b); }
  static Reg div(Reg a, Reg b) { return _mm256_div_ps(a, b); }
  static Reg sqrt(Reg a) { return _mm256_sqrt_ps(a); }
  static bool all_zero(Reg a) {
    return _mm256_movemask_ps(_mm256_cmp_ps(a, _mm256_setzero_ps(), _CMP_EQ_OQ)) == 0xFF;
  }
  static float hsum(Reg v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    lo = _mm_add_ps(lo, hi);
    __m128 shuf = _mm_movehdup_ps(lo);
    __m128 sums = _mm_add_ps(lo, shuf);
    shuf = _mm_movehl_ps(shuf, sums);
    sums = _mm_add_ss(sums, shuf);
    return _mm_cvtss_f32(sums);
  }
  static float scalar_sqrt(float a) { return __builtin_sqrtf(a); }
};

template <>
struct Vec<double> {
  using Reg = __m256d;
  static constexpr std::size_t kLanes = 4;
  static Reg zero() { return _mm256_setzero_pd(); }
  static Reg set1(double a) { return _mm256_set1_pd(a); }
  static Reg load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, Reg v) { _mm256_storeu_pd(p, v); }
  static Reg fmadd(Reg a, Reg b, Reg c) { return _mm256_fmadd_pd(a, b, c); }
  static Reg add(Reg a, Reg b) { return _mm256_add_pd(a, b); }
  static Reg sub(Reg a, Reg b) { return _mm256_sub_pd(a, b); }
  static Reg mul(Reg a, Reg b) { return _mm256_mul_pd(a, b); }
  static Reg div(Reg a, Reg b) { return _mm256_div_pd(a, b); }
  static Reg sqrt(Reg a) { return _mm256_sqrt_pd(a); }
  static bool all_zero(Reg a) {
    return _mm256_movemask_pd(_mm256_cmp_pd(a, _mm256_setzero_pd(), _CMP_EQ_OQ)) == 0xF;
  }
  static double hsum(Reg v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d high64 = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, high64));
  }
  static double scalar_sqrt(double a) { return __builtin_sqrt(a); }
};

template <typename Real>
void axpy(Real a, const Real* x, Real* y, std::size_t n) {
  using V = Vec<Real>;
  constexpr std::size_t L = V::kLanes;
  const auto va = V::set1(a);
  std::size_t i = 0;
  for (; i + 4 * L <= n; i += 4 * L) {
    V::store(y + i, V::fmadd(va, V::load(x + i), V::load(y + i)));
    V::store(y + i + L, V::fmadd(va, V::load(x + i + L), V::load(y + i + L)));
    V::store(y + i + 2 * L, V::fmadd(va, V::load(x + i + 2 * L), V::load(y + i + 2 * L)));
    V::store(y + i + 3 * L, V::fmadd(va, V::load(x + i + 3 * L), V::load(y + i + 3 * L)));
  }
  for (; i + L <= n; i += L) V::store(y + i, V::fmadd(va, V::load(x + i), V::load(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

template <typename Real>
Real dot(const Real* x, const Real* y, std::size_t n) {
  using V = Vec<Real>;
  constexpr std::size_t L = V::kLanes;
  auto acc0 = V::zero(), acc1 = V::zero(), acc2 = V::zero(), acc3 = V::zero();
  std::size_t i = 0;
  for (; i + 4 * L <= n; i += 4 * L) {
    acc0 = V::fmadd(V::load(x + i), V::load(y + i), acc0);
    acc1 = V::fmadd(V::load(x + i + L), V::load(y + i + L), acc1);
    acc2 = V::fmadd(V::load(x + i + 2 * L), V::load(y + i + 2 * L), acc2);
    acc3 = V::fmadd(V::load(x + i + 3 * L), V::load(y + i + 3 * L), acc3);
  }
  for (; i + L <= n; i += L) acc0 = V::fmadd(V::load(x + i), V::load(y + i), acc0);
  Real sum = V::hsum(V::add(V::add(acc0, acc1), V::add(acc2, acc3)));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

template <typename Real>
void gemv_accumulate(const Real* x, std::size_t rows, const Real* w, std::size_t cols, Real* y) {
  using V = Vec<Real>;
  constexpr std::size_t L = V::kLanes;
  constexpr std::size_t kBlock = 4 * L;
  std::size_t c = 0;
  // Keep a 4-register column block of y resident while streaming the rows.
  for (; c + kBlock <= cols; c += kBlock) {
    auto y0 = V::load(y + c), y1 = V::load(y + c + L), y2 = V::load(y + c + 2 * L), y3 = V::load(y + c + 3 * L);
    for (std::size_t r = 0; r < rows; ++r) {
      const Real xr = x[r];
      if (xr == Real(0)) continue;
      const auto vx = V::set1(xr);
      const Real* wr = w + r * cols + c;
      y0 = V::fmadd(vx, V::load(wr), y0);
      y1 = V::fmadd(vx, V::load(wr + L), y1);
      y2 = V::fmadd(vx, V::load(wr + 2 * L), y2);
      y3 = V::fmadd(vx, V::load(wr + 3 * L), y3);
    }
    V::store(y + c, y0);
    V::store(y + c + L, y1);
    V::store(y + c + 2 * L, y2);
    V::store(y + c + 3 * L, y3);
  }
  for (; c + L <= cols; c += L) {
    auto acc = V::load(y + c);
    for (std::size_t r = 0; r < rows; ++r) {
      if (x[r] == Real(0)) continue;
      acc = V::fmadd(V::set1(x[r]), V::load(w + r * cols + c), acc);
    }
    V::store(y + c, acc);
  }
  for (; c < cols; ++c) {
    Real acc = y[c];
    for (std::size_t r = 0; r < rows; ++r) acc += x[r] * w[r * cols + c];
    y[c] = acc;
  }
}

template <typename Real>
void gemv_transposed(const Real* w, std::size_t rows, std::size_t cols, const Real* v, Real* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(w + r * cols, v, cols);
}

template <typename Real>
void rank1_update(const Real* x, std::size_t rows, const Real* v, std::size_t cols, Real* w) {
  for (std::size_t r = 0; r < rows; ++r) {
    if (x[r] == Real(0)) continue;
    axpy(x[r], v, w + r * cols, cols);
  }
}

template <typename Real>
bool adam_update(Real* theta, const Real* grad, Real* m, Real* v, std::size_t n, const AdamCoefficients<Real>& c) {
  using V = Vec<Real>;
  constexpr std::size_t L = V::kLanes;
  const Real one_minus_b1 = Real(1) - c.beta1;
  const Real one_minus_b2 = Real(1) - c.beta2;
  const auto vb1 = V::set1(c.beta1), vb2 = V::set1(c.beta2);
  const auto v1b1 = V::set1(one_minus_b1), v1b2 = V::set1(one_minus_b2);
  const auto vbc1 = V::set1(c.bias_correction1), vbc2 = V::set1(c.bias_correction2);
  const auto vlr = V::set1(c.learning_rate), veps = V::set1(c.epsilon), vl2 = V::set1(c.l2);
  // g * 0 is zero for finite g and NaN otherwise.
  auto poison = V::zero();
  const auto zero = V::zero();
  std::size_t i = 0;
  for (; i + L <= n; i += L) {
    const auto th = V::load(theta + i);
    const auto g = V::add(V::load(grad + i), V::mul(vl2, th));
    poison = V::add(poison, V::mul(g, zero));
    const auto mi = V::add(V::mul(vb1, V::load(m + i)), V::mul(v1b1, g));
    const auto vi = V::add(V::mul(vb2, V::load(v + i)), V::mul(v1b2, V::mul(g, g)));
    V::store(m + i, mi);
    V::store(v + i, vi);
    const auto m_hat = V::div(mi, vbc1);
    const auto v_hat = V::div(vi, vbc2);
    V::store(theta + i, V::sub(th, V::div(V::mul(vlr, m_hat), V::add(V::sqrt(v_hat), veps))));
  }
  bool finite = V::all_zero(poison);
  for (; i < n; ++i) {
    const Real g = grad[i] + c.l2 * theta[i];
    finite &= (g - g) == Real(0);
    m[i] = c.beta1 * m[i] + one_minus_b1 * g;
    v[i] = c.beta2 * v[i] + one_minus_b2 * (g * g);
    const Real m_hat = m[i] / c.bias_correction1;
    const Real v_hat = v[i] / c.bias_correction2;
    theta[i] -= c.learning_rate * m_hat / (V::scalar_sqrt(v_hat) + c.epsilon);
  }
  return finite;
}

template <typename Real>
constexpr KernelTable<Real> make_table() {
  return {Isa::kAvx2,           &axpy<Real>,         &dot<Real>,        &gemv_accumulate<Real>,
          &gemv_transposed<Real>, &rank1_update<Real>, &adam_update<Real>};
}

constexpr KernelTable<float> kAvx2Float = make_table<float>();
constexpr KernelTable<double> kAvx2Double = make_table<double>();

}  // namespace

namespace detail {

const KernelTable<float>* avx2_float_table() { return &kAvx2Float; }
const KernelTable<double>* avx2_double_table() { return &kAvx2Double; }

}  // namespace detail
}  // namespace pathwalk::simd

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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "pathwalk/rng.h"
#include "pathwalk/simd/kernels.h"

namespace {

using namespace pathwalk;
using simd::KernelTable;

template <typename Real>
class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    fast_ = simd::avx2_kernels<Real>();
    if (fast_ == nullptr) GTEST_SKIP() << "AVX2/FMA not available on this machine";
  }

  std::vector<Real> random(std::size_t n) {
    std::vector<Real> v(n);
    for (auto& x : v) x = static_cast<Real>(rng_.uniform(-1, 1));
    return v;
  }

  // Float kernels reassociate sums and fuse multiply-adds; the bound scales with n.
  static double tolerance(std::size_t n) {
    const double eps = std::numeric_limits<Real>::epsilon();
    return 8 * eps * static_cast<double>(n + 1);
  }

  const KernelTable<Real>& ref_ = simd::scalar_kernels<Real>();
  const KernelTable<Real>* fast_ = nullptr;
  Rng rng_{12345};
};

using RealTypes = ::testing::Types<float, double>;
TYPED_TEST_SUITE(KernelEquivalence, RealTypes);

// Sizes cover empty input, sub-vector tails and several full vectors.
const std::size_t kSizes[] = {0, 1, 3, 4, 7, 8, 9, 15, 16, 17, 31, 33, 64, 100, 257};

TYPED_TEST(KernelEquivalence, Axpy) {
  for (std::size_t n : kSizes) {
    const auto x = this->random(n);
    auto y1 = this->random(n);
    auto y2 = y1;
    this->ref_.axpy(TypeParam(0.37), x.data(), y1.data(), n);
    this->fast_->axpy(TypeParam(0.37), x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(y1[i], y2[i], this->tolerance(1)) << n;
  }
}

TYPED_TEST(KernelEquivalence, Dot) {
  for (std::size_t n : kSizes) {
    const auto x = this->random(n), y = this->random(n);
    ASSERT_NEAR(this->ref_.dot(x.data(), y.data(), n), this->fast_->dot(x.data(), y.data(), n), this->tolerance(n));
  }
}

TYPED_TEST(KernelEquivalence, GemvFamilies) {
  for (std::size_t rows : {1, 5, 16, 33}) {
    for (std::size_t cols : kSizes) {
      auto x = this->random(rows);
      x[0] = 0;  // zero inputs are skipped by the accumulate kernels
      const auto w = this->random(rows * cols), v = this->random(cols);
      auto y1 = this->random(cols);
      auto y2 = y1;
      this->ref_.gemv_accumulate(x.data(), rows, w.data(), cols, y1.data());
      this->fast_->gemv_accumulate(x.data(), rows, w.data(), cols, y2.data());
      for (std::size_t c = 0; c < cols; ++c) ASSERT_NEAR(y1[c], y2[c], this->tolerance(rows));

      std::vector<TypeParam> o1(rows), o2(rows);
      this->ref_.gemv_transposed(w.data(), rows, cols, v.data(), o1.data());
      this->fast_->gemv_transposed(w.data(), rows, cols, v.data(), o2.data());
      for (std::size_t r = 0; r < rows; ++r) ASSERT_NEAR(o1[r], o2[r], this->tolerance(cols));

      auto w1 = w, w2 = w;
      this->ref_.rank1_update(x.data(), rows, v.data(), cols, w1.data());
      this->fast_->rank1_update(x.data(), rows, v.data(), cols, w2.data());
      for (std::size_t k = 0; k < w1.size(); ++k) ASSERT_NEAR(w1[k], w2[k], this->tolerance(1));
    }
  }
}

TYPED_TEST(KernelEquivalence, AdamUpdate) {
  const simd::AdamCoefficients<TypeParam> c{TypeParam(1e-3), TypeParam(0.9),   TypeParam(0.999), TypeParam(1e-8),
                                            TypeParam(0.271), TypeParam(0.003), TypeParam(1e-4)};
  for (std::size_t n : kSizes) {
    auto theta1 = this->random(n), m1 = this->random(n), v1 = this->random(n);
    for (auto& x : v1) x = std::abs(x);
    const auto g = this->random(n);
    auto theta2 = theta1, m2 = m1, v2 = v1;
    ASSERT_TRUE(this->ref_.adam_update(theta1.data(), g.data(), m1.data(), v1.data(), n, c));
    ASSERT_TRUE(this->fast_->adam_update(theta2.data(), g.data(), m2.data(), v2.data(), n, c));
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_NEAR(theta1[i], theta2[i], 64 * this->tolerance(1));
      ASSERT_NEAR(m1[i], m2[i], this->tolerance(1));
      ASSERT_NEAR(v1[i], v2[i], this->tolerance(1));
    }
  }
}

TYPED_TEST(KernelEquivalence, AdamFlagsNonFiniteGradientsAtEveryOffset) {
  const simd::AdamCoefficients<TypeParam> c{TypeParam(1e-3), TypeParam(0.9), TypeParam(0.999), TypeParam(1e-8),
                                            TypeParam(0.1),  TypeParam(0.001), TypeParam(0)};
  for (std::size_t n : {1, 7, 8, 9, 20}) {
    for (std::size_t bad = 0; bad < n; ++bad) {
      for (TypeParam poison : {std::numeric_limits<TypeParam>::quiet_NaN(), std::numeric_limits<TypeParam>::infinity()}) {
        std::vector<TypeParam> theta(n, 0), m(n, 0), v(n, 0), g(n, TypeParam(0.5));
        g[bad] = poison;
        auto t2 = theta, m2 = m, v2 = v;
        ASSERT_FALSE(this->ref_.adam_update(theta.data(), g.data(), m.data(), v.data(), n, c));
        ASSERT_FALSE(this->fast_->adam_update(t2.data(), g.data(), m2.data(), v2.data(), n, c));
      }
    }
  }
}

TEST(Dispatch, SelectedTableMatchesActiveIsa) {
  EXPECT_EQ(simd::kernels<float>().isa, simd::active_isa());
  EXPECT_EQ(simd::scalar_kernels<double>().isa, simd::Isa::kScalar);
  EXPECT_EQ(simd::to_string(simd::Isa::kAvx2), "avx2");
}

}  // namespace

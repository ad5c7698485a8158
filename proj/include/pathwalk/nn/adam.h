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

#include <cstdint>
#include <span>
#include <vector>

#include "pathwalk/nn/params.h"

namespace pathwalk::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamConfig&) const = default;
};

// First and second moments per parameter block, same shapes as the blocks.
template <typename Real>
struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<std::vector<Real>> m;
  std::vector<std::vector<Real>> v;

  static AdamState create(std::span<const ParamBlock<const Real>> blocks, const AdamConfig& config);
};

// Bias-corrected Adam on every block, using g + l2 * theta as the gradient.
// Throws NumericError naming the first block with a non-finite gradient.
template <typename Real>
void adam_step(AdamState<Real>& state, std::span<const ParamBlock<Real>> params,
               std::span<const ParamBlock<const Real>> grads, double l2 = 0.0);

}  // namespace pathwalk::nn

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
#include <span>
#include <vector>

#include "pathwalk/nn/bilstm.h"
#include "pathwalk/nn/params.h"
#include "pathwalk/representation.h"

namespace pathwalk::nn {

// Probabilities are clamped to this value before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

template <typename Real>
double cross_entropy(std::span<const Real> probs, int label);

// 0.5 * sum of squares over every trainable value, embeddings included.
template <typename Real>
double half_squared_norm(const Parameters<Real>& params);

// Mean cross-entropy over the batch plus l2 * half_squared_norm(params).
template <typename Real>
double objective(std::span<const std::vector<Real>> probs, std::span<const int> labels,
                 const Parameters<Real>& params, double l2);

struct LabeledRecipe {
  SentenceRecipe recipe;
  int label = 0;
};

// Reusable buffers for one worker.
template <typename Real>
struct Workspace {
  std::vector<Real> input;
  std::vector<Real> d_input;
  ForwardCache<Real> cache;
};

// Forward + backward for each item. Recurrent/classifier gradients are
// accumulated into grads.net and embedding gradients into the rows named by
// each recipe, all scaled by `scale`. The regulariser is not applied.
// Returns the summed (unscaled) cross-entropy.
template <typename Real>
double accumulate_data_gradient(const Parameters<Real>& params, std::span<const LabeledRecipe> items,
                                std::size_t length, Real scale, Parameters<Real>& grads, Workspace<Real>& workspace);

// Full objective and, when grads is non-null, its exact gradient
// (mean data gradient plus l2 * theta on every parameter).
template <typename Real>
double loss_and_gradient(const Parameters<Real>& params, std::span<const LabeledRecipe> items, std::size_t length,
                         double l2, Parameters<Real>* grads);

}  // namespace pathwalk::nn

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

#include "pathwalk/matrix.h"
#include "pathwalk/nn/params.h"

namespace pathwalk::nn {

// Activations of one direction in processing order (step s of the backward
// direction reads position length-1-s).
template <typename Real>
struct DirectionCache {
  Matrix<Real> concat;     // steps x (d + h): [x_t ; h_{t-1}]
  Matrix<Real> gates;      // steps x 4h, post-activation
  Matrix<Real> cell;       // steps x h
  Matrix<Real> cell_tanh;  // steps x h
};

template <typename Real>
struct ForwardCache {
  std::size_t length = 0;
  DirectionCache<Real> forward;
  DirectionCache<Real> backward;
  std::vector<Real> sentence;  // [h_fw(final) ; h_bw(final)], 2h
  std::vector<Real> logits;
  std::vector<Real> probs;
};

// Runs both directions over all `length` positions of `input` (length x d,
// padded positions are zero vectors) and returns softmax probabilities of the
// affine classifier over the concatenated final states. Throws NumericError on
// non-finite input or logits.
template <typename Real>
std::vector<Real> bilstm_forward(const ModelParams<Real>& params, std::span<const Real> input, std::size_t length,
                                 ForwardCache<Real>* cache = nullptr);

// Backpropagates `scale * d(-log p[label])` through a cached forward pass.
// Parameter gradients are accumulated into `grads`; the gradient with respect
// to the input sequence is written to d_input (length x d).
template <typename Real>
void bilstm_backward(const ModelParams<Real>& params, const ForwardCache<Real>& cache, int label, Real scale,
                     ModelParams<Real>& grads, std::span<Real> d_input);

// Numerically stable softmax.
template <typename Real>
std::vector<Real> softmax(std::span<const Real> logits);

}  // namespace pathwalk::nn

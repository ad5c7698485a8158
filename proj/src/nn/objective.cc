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

#include "pathwalk/nn/objective.h"

#include <algorithm>
#include <cmath>

#include "pathwalk/common.h"

namespace pathwalk::nn {

template <typename Real>
double cross_entropy(std::span<const Real> probs, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= probs.size()) throw ContractError("cross_entropy: bad label");
  return -std::log(std::max(static_cast<double>(probs[static_cast<std::size_t>(label)]), kProbabilityFloor));
}

template <typename Real>
double half_squared_norm(const Parameters<Real>& params) {
  double total = 0;
  for (const auto& block : params.blocks()) {
    for (Real v : block.values) total += static_cast<double>(v) * static_cast<double>(v);
  }
  return 0.5 * total;
}

template <typename Real>
double objective(std::span<const std::vector<Real>> probs, std::span<const int> labels, const Parameters<Real>& params,
                 double l2) {
  if (probs.size() != labels.size() || probs.empty()) throw ContractError("objective: batch size mismatch");
  double data = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) data += cross_entropy<Real>(probs[i], labels[i]);
  data /= static_cast<double>(probs.size());
  return l2 == 0.0 ? data : data + l2 * half_squared_norm(params);
}

template <typename Real>
double accumulate_data_gradient(const Parameters<Real>& params, std::span<const LabeledRecipe> items,
                                std::size_t length, Real scale, Parameters<Real>& grads, Workspace<Real>& ws) {
  const std::size_t d = params.net.dims.input_dim;
  ws.input.resize(length * d);
  ws.d_input.resize(length * d);
  double loss = 0;
  for (const LabeledRecipe& item : items) {
    materialize(item.recipe, params.embeddings, length, std::span<Real>(ws.input));
    const auto probs = bilstm_forward<Real>(params.net, ws.input, length, &ws.cache);
    loss += cross_entropy<Real>(probs, item.label);
    bilstm_backward<Real>(params.net, ws.cache, item.label, scale, grads.net, ws.d_input);
    scatter_gradient<Real>(item.recipe, ws.d_input, length, grads.embeddings);
  }
  return loss;
}

template <typename Real>
double loss_and_gradient(const Parameters<Real>& params, std::span<const LabeledRecipe> items, std::size_t length,
                         double l2, Parameters<Real>* grads) {
  if (items.empty()) throw ContractError("loss_and_gradient: empty batch");
  const double m = static_cast<double>(items.size());
  double data = 0;
  Workspace<Real> ws;
  if (grads) {
    data = accumulate_data_gradient(params, items, length, static_cast<Real>(1.0 / m), *grads, ws);
    auto g = grads->blocks();
    const auto p = params.blocks();
    for (std::size_t b = 0; b < g.size(); ++b) {
      for (std::size_t i = 0; i < g[b].values.size(); ++i) g[b].values[i] += static_cast<Real>(l2) * p[b].values[i];
    }
  } else {
    const std::size_t d = params.net.dims.input_dim;
    ws.input.resize(length * d);
    for (const LabeledRecipe& item : items) {
      materialize(item.recipe, params.embeddings, length, std::span<Real>(ws.input));
      data += cross_entropy<Real>(bilstm_forward<Real>(params.net, ws.input, length), item.label);
    }
  }
  data /= m;
  return l2 == 0.0 ? data : data + l2 * half_squared_norm(params);
}

#define PATHWALK_INSTANTIATE(Real)                                                                                \
  template double cross_entropy<Real>(std::span<const Real>, int);                                              \
  template double half_squared_norm<Real>(const Parameters<Real>&);                                              \
  template double objective<Real>(std::span<const std::vector<Real>>, std::span<const int>,                      \
                                  const Parameters<Real>&, double);                                              \
  template double accumulate_data_gradient<Real>(const Parameters<Real>&, std::span<const LabeledRecipe>,        \
                                                 std::size_t, Real, Parameters<Real>&, Workspace<Real>&);        \
  template double loss_and_gradient<Real>(const Parameters<Real>&, std::span<const LabeledRecipe>, std::size_t,  \
                                          double, Parameters<Real>*);

PATHWALK_INSTANTIATE(float)
PATHWALK_INSTANTIATE(double)
#undef PATHWALK_INSTANTIATE

}  // namespace pathwalk::nn

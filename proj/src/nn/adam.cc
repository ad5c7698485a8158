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

#include "pathwalk/nn/adam.h"

#include <cmath>

#include "pathwalk/common.h"
#include "pathwalk/simd/kernels.h"

namespace pathwalk::nn {

template <typename Real>
AdamState<Real> AdamState<Real>::create(std::span<const ParamBlock<const Real>> blocks, const AdamConfig& config) {
  AdamState state;
  state.config = config;
  for (const auto& b : blocks) {
    state.m.emplace_back(b.values.size(), Real(0));
    state.v.emplace_back(b.values.size(), Real(0));
  }
  return state;
}

template <typename Real>
void adam_step(AdamState<Real>& state, std::span<const ParamBlock<Real>> params,
               std::span<const ParamBlock<const Real>> grads, double l2) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw ContractError("adam_step: parameter, gradient and state block counts differ");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const simd::AdamCoefficients<Real> coeff{
      static_cast<Real>(state.config.learning_rate),
      static_cast<Real>(state.config.beta1),
      static_cast<Real>(state.config.beta2),
      static_cast<Real>(state.config.epsilon),
      static_cast<Real>(1.0 - std::pow(state.config.beta1, t)),
      static_cast<Real>(1.0 - std::pow(state.config.beta2, t)),
      static_cast<Real>(l2),
  };
  const auto& k = simd::kernels<Real>();
  for (std::size_t b = 0; b < params.size(); ++b) {
    const std::size_t n = params[b].values.size();
    if (grads[b].values.size() != n || state.m[b].size() != n) {
      throw ContractError("adam_step: shape mismatch in block " + params[b].name);
    }
    if (!k.adam_update(params[b].values.data(), grads[b].values.data(), state.m[b].data(), state.v[b].data(), n,
                       coeff)) {
      throw NumericError("non-finite gradient in parameter block '" + params[b].name + "' at step " +
                         std::to_string(state.step));
    }
  }
}

template struct AdamState<float>;
template struct AdamState<double>;
template void adam_step<float>(AdamState<float>&, std::span<const ParamBlock<float>>,
                               std::span<const ParamBlock<const float>>, double);
template void adam_step<double>(AdamState<double>&, std::span<const ParamBlock<double>>,
                                std::span<const ParamBlock<const double>>, double);

}  // namespace pathwalk::nn

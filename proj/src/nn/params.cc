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

#include "pathwalk/nn/params.h"

#include <algorithm>

namespace pathwalk::nn {

template <typename Real>
ModelParams<Real> ModelParams<Real>::zeros(const ModelDims& dims) {
  ModelParams p;
  p.dims = dims;
  const std::size_t rows = dims.input_dim + dims.hidden;
  for (LstmWeights<Real>* dir : {&p.forward, &p.backward}) {
    dir->w = Matrix<Real>(rows, 4 * dims.hidden);
    dir->b.assign(4 * dims.hidden, Real(0));
  }
  p.out_w = Matrix<Real>(2 * dims.hidden, dims.classes);
  p.out_b.assign(dims.classes, Real(0));
  return p;
}

template <typename Real>
Parameters<Real> Parameters<Real>::zeros(const ModelDims& dims, std::size_t node_count, std::size_t edge_count) {
  return {ModelParams<Real>::zeros(dims), EmbeddingTables<Real>(node_count, edge_count, dims.input_dim)};
}

template <typename Real>
std::vector<ParamBlock<Real>> Parameters<Real>::blocks() {
  return {
      {"lstm_fw_w", net.forward.w.values()}, {"lstm_fw_b", net.forward.b},
      {"lstm_bw_w", net.backward.w.values()}, {"lstm_bw_b", net.backward.b},
      {"out_w", net.out_w.values()},          {"out_b", net.out_b},
      {"node_embedding", embeddings.node.values()}, {"edge_embedding", embeddings.edge.values()},
  };
}

template <typename Real>
std::vector<ParamBlock<const Real>> Parameters<Real>::blocks() const {
  return {
      {"lstm_fw_w", net.forward.w.values()}, {"lstm_fw_b", net.forward.b},
      {"lstm_bw_w", net.backward.w.values()}, {"lstm_bw_b", net.backward.b},
      {"out_w", net.out_w.values()},          {"out_b", net.out_b},
      {"node_embedding", embeddings.node.values()}, {"edge_embedding", embeddings.edge.values()},
  };
}

template <typename Real>
std::size_t Parameters<Real>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks()) n += b.values.size();
  return n;
}

template <typename Real>
void initialize(Parameters<Real>& params, const InitConfig& config, Rng& rng) {
  const auto uniform = [&](std::span<Real> values, double range) {
    for (Real& v : values) v = static_cast<Real>(rng.uniform(-range, range));
  };
  const std::size_t h = params.net.dims.hidden;
  for (LstmWeights<Real>* dir : {&params.net.forward, &params.net.backward}) {
    uniform(dir->w.values(), config.weight_range);
    std::fill(dir->b.begin(), dir->b.end(), Real(0));
    std::fill_n(dir->b.begin() + static_cast<std::ptrdiff_t>(kForgetGate * h), h, static_cast<Real>(config.forget_bias));
  }
  uniform(params.net.out_w.values(), config.weight_range);
  std::fill(params.net.out_b.begin(), params.net.out_b.end(), Real(0));
  const double scale = config.embedding_scale / static_cast<double>(params.embeddings.dim());
  uniform(params.embeddings.node.values(), scale);
  uniform(params.embeddings.edge.values(), scale);
}

template <typename To, typename From>
Parameters<To> convert(const Parameters<From>& params) {
  auto out = Parameters<To>::zeros(params.net.dims, params.embeddings.node.rows(), params.embeddings.edge.rows());
  auto dst = out.blocks();
  const auto src = params.blocks();
  for (std::size_t b = 0; b < src.size(); ++b) {
    std::transform(src[b].values.begin(), src[b].values.end(), dst[b].values.begin(),
                   [](From v) { return static_cast<To>(v); });
  }
  return out;
}

template struct ModelParams<float>;
template struct ModelParams<double>;
template struct Parameters<float>;
template struct Parameters<double>;
template void initialize<float>(Parameters<float>&, const InitConfig&, Rng&);
template void initialize<double>(Parameters<double>&, const InitConfig&, Rng&);
template Parameters<double> convert<double, float>(const Parameters<float>&);
template Parameters<float> convert<float, double>(const Parameters<double>&);
template Parameters<float> convert<float, float>(const Parameters<float>&);
template Parameters<double> convert<double, double>(const Parameters<double>&);

}  // namespace pathwalk::nn

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
#include <string>
#include <vector>

#include "pathwalk/matrix.h"
#include "pathwalk/representation.h"
#include "pathwalk/rng.h"

namespace pathwalk::nn {

struct ModelDims {
  std::size_t input_dim = 128;
  std::size_t hidden = 128;
  std::size_t classes = 2;

  bool operator==(const ModelDims&) const = default;
};

// Gate blocks inside the 4h-wide pre-activation vector.
enum Gate : std::size_t { kInputGate = 0, kForgetGate = 1, kOutputGate = 2, kCandidate = 3 };

// One LSTM direction. Row r of `w` multiplies element r of [x_t ; h_{t-1}],
// so w is (input_dim + hidden) x 4h and gate g occupies columns [g*h, (g+1)*h).
template <typename Real>
struct LstmWeights {
  Matrix<Real> w;
  std::vector<Real> b;
};

template <typename Real>
struct ModelParams {
  ModelDims dims;
  LstmWeights<Real> forward;
  LstmWeights<Real> backward;
  Matrix<Real> out_w;  // 2h x C
  std::vector<Real> out_b;

  static ModelParams zeros(const ModelDims& dims);
};

template <typename Real>
struct ParamBlock {
  std::string name;
  std::span<Real> values;
};

// Everything the optimizer touches: recurrent encoder, classifier and both embedding tables.
template <typename Real>
struct Parameters {
  ModelParams<Real> net;
  EmbeddingTables<Real> embeddings;

  static Parameters zeros(const ModelDims& dims, std::size_t node_count, std::size_t edge_count);

  // Stable order: lstm_fw_w, lstm_fw_b, lstm_bw_w, lstm_bw_b, out_w, out_b, node_embedding, edge_embedding.
  std::vector<ParamBlock<Real>> blocks();
  std::vector<ParamBlock<const Real>> blocks() const;

  std::size_t parameter_count() const;
};

struct InitConfig {
  double weight_range = 0.08;
  double forget_bias = 1.0;
  // Embeddings are uniform in [-embedding_scale / d, embedding_scale / d].
  double embedding_scale = 0.5;

  bool operator==(const InitConfig&) const = default;
};

template <typename Real>
void initialize(Parameters<Real>& params, const InitConfig& config, Rng& rng);

template <typename To, typename From>
Parameters<To> convert(const Parameters<From>& params);

}  // namespace pathwalk::nn

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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathwalk/corpus.h"
#include "pathwalk/nn/adam.h"
#include "pathwalk/nn/params.h"
#include "pathwalk/representation.h"
#include "pathwalk/termgraph.h"
#include "pathwalk/topology.h"

namespace pathwalk::nn {

struct TrainConfig {
  Variant variant = Variant::kPathWalk1;
  std::size_t k = 5;
  TopologyMode topology_mode = TopologyMode::kSimplex;
  std::size_t dim = 128;
  std::size_t hidden = 128;
  std::size_t max_len = 20;
  std::size_t batch = 128;
  std::size_t epochs = 20;
  double l2 = 1e-4;
  AdamConfig adam;
  double epsilon = 1.0;
  AdversarialMode adversarial = AdversarialMode::kNone;
  PoolMode pool = PoolMode::kSequence;
  InitConfig init;
  std::uint64_t seed = 1;
  // Worker threads per batch; gradient reduction order is fixed for a given count.
  std::size_t threads = 1;

  bool operator==(const TrainConfig&) const = default;
};

// One message per violated constraint; empty when the config is usable.
std::vector<std::string> validate(const TrainConfig& config);

struct EpochRecord {
  std::size_t epoch = 0;
  std::optional<double> train_loss;  // absent for the untrained evaluation
  double test_accuracy = 0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  double final_accuracy = 0;
  double train_accuracy = 0;
  double wall_seconds = 0;
};

struct TrainedModel {
  TrainConfig config;
  std::size_t num_classes = 0;
  std::uint64_t graph_fingerprint = 0;
  Parameters<float> params;
  AdamState<float> optimizer;
};

struct TrainResult {
  TrainReport report;
  TrainedModel model;
};

// How a sentence becomes a model input.
struct EncodingOptions {
  Variant variant = Variant::kPathWalk1;
  TopologyOptions topology;
  AdversarialMode adversarial = AdversarialMode::kNone;
  double epsilon = 0.0;
  PoolMode pool = PoolMode::kSequence;
  std::size_t length = 20;
};

EncodingOptions training_encoding(const TrainConfig& config);
// Clean composition used at test time (adversarial noise is training-only).
EncodingOptions evaluation_encoding(const TrainConfig& config);

// walk_of_words -> (topology | adversarial sampling) -> recipe, truncated to
// options.length positions unless pooled.
SentenceRecipe prepare_recipe(const TermGraph& graph, std::span<const NodeId> sentence, const EncodingOptions& options,
                              std::uint64_t sample_seed);

using EpochCallback = std::function<void(const EpochRecord&)>;

// Per epoch: shuffle, batch, encode, forward/backward, Adam; then evaluate on
// `test`. Epoch 0 in the report is the untrained evaluation.
TrainResult train(const TrainConfig& config, const TermGraph& graph, std::span<const EncodedSentence> train_set,
                  std::span<const EncodedSentence> test_set, std::size_t num_classes,
                  const EpochCallback& on_epoch = {});

// Seed for test-time topology sampling; defaults to one derived from the training seed.
std::uint64_t evaluation_seed(const TrainedModel& model);

std::vector<int> predict(const TrainedModel& model, const TermGraph& graph, std::span<const EncodedSentence> sentences,
                         std::uint64_t eval_seed);

// Fraction of argmax-correct predictions. Throws DataError if the model does
// not belong to `graph`.
double evaluate(const TrainedModel& model, const TermGraph& graph, std::span<const EncodedSentence> test_set,
                std::optional<std::uint64_t> eval_seed = std::nullopt);

void check_compatible(const TrainedModel& model, const TermGraph& graph);

}  // namespace pathwalk::nn

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
#include <span>
#include <vector>

#include "pathwalk/config.h"
#include "pathwalk/corpus.h"
#include "pathwalk/nn/trainer.h"
#include "pathwalk/rng.h"
#include "pathwalk/termgraph.h"

namespace pathwalk {

struct PerturbationSpec {
  std::size_t noise_count = 0;
  Placement placement = Placement::kAppend;
  // Noise ids are drawn uniformly from [1, vocab_size): the training vocabulary without UNK.
  std::size_t vocab_size = 0;
  std::size_t trials = 5;
  std::uint64_t seed = 1;
};

// Appends spec.noise_count noise ids. Noise past the model length is later lost
// to truncation, which callers can detect with truncated_noise().
EncodedSentence perturb_sentence(const EncodedSentence& sentence, const PerturbationSpec& spec, Rng& rng);

struct CurvePoint {
  std::size_t noise_count = 0;
  double mean_accuracy = 0;
  double std_accuracy = 0;  // sample standard deviation; 0 for a single trial
  std::size_t trials = 0;
  std::vector<double> accuracies;
  // Test sentences whose appended noise was partly or fully cut by truncation.
  std::size_t truncated_sentences = 0;
};

struct RobustnessCurve {
  std::vector<CurvePoint> points;
};

std::size_t truncated_noise(std::size_t original_length, std::size_t noise_count, std::size_t model_length);

// One point per noise count in [noise_min, noise_max]. Trial t of count c uses
// its own stream derived from (seed, "noise", {c, t}). Every trial is evaluated
// with the same test-time topology seed as evaluate(), so the zero-noise point
// matches evaluate() exactly.
RobustnessCurve robustness_sweep(const nn::TrainedModel& model, const TermGraph& graph,
                                 std::span<const EncodedSentence> test_set, std::size_t vocab_size,
                                 std::size_t noise_min, std::size_t noise_max, std::size_t trials, std::uint64_t seed);

// train() with adversarial edge/node noise during training. Requires variant pw1
// and a mode other than none; evaluation stays clean.
nn::TrainResult adversarial_train(const nn::TrainConfig& config, const TermGraph& graph,
                                  std::span<const EncodedSentence> train_set, std::span<const EncodedSentence> test_set,
                                  std::size_t num_classes, const nn::EpochCallback& on_epoch = {});

}  // namespace pathwalk

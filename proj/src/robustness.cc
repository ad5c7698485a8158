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

#include "pathwalk/robustness.h"

#include <cmath>
#include <numeric>
#include <string>

#include "pathwalk/common.h"

namespace pathwalk {

EncodedSentence perturb_sentence(const EncodedSentence& sentence, const PerturbationSpec& spec, Rng& rng) {
  if (sentence.ids.empty()) throw ContractError("perturb_sentence: empty sentence");
  EncodedSentence out = sentence;
  if (spec.noise_count == 0) return out;
  if (spec.vocab_size < 2) throw ContractError("perturb_sentence: vocabulary has no tokens to draw noise from");
  out.ids.reserve(out.ids.size() + spec.noise_count);
  for (std::size_t i = 0; i < spec.noise_count; ++i) {
    out.ids.push_back(static_cast<NodeId>(1 + rng.uniform_index(spec.vocab_size - 1)));
  }
  return out;
}

std::size_t truncated_noise(std::size_t original_length, std::size_t noise_count, std::size_t model_length) {
  const std::size_t total = original_length + noise_count;
  if (total <= model_length) return 0;
  return std::min(noise_count, total - model_length);
}

RobustnessCurve robustness_sweep(const nn::TrainedModel& model, const TermGraph& graph,
                                 std::span<const EncodedSentence> test_set, std::size_t vocab_size,
                                 std::size_t noise_min, std::size_t noise_max, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (noise_min > noise_max) throw UsageError("noise-min must not exceed noise-max");
  nn::check_compatible(model, graph);
  const std::uint64_t eval_seed = nn::evaluation_seed(model);
  const std::size_t length = model.config.pool == PoolMode::kSum ? SIZE_MAX : model.config.max_len;

  RobustnessCurve curve;
  for (std::size_t count = noise_min; count <= noise_max; ++count) {
    CurvePoint point;
    point.noise_count = count;
    point.trials = trials;
    for (const auto& s : test_set) point.truncated_sentences += truncated_noise(s.ids.size(), count, length) > 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, "noise", {count, t}));
      const PerturbationSpec spec{count, Placement::kAppend, vocab_size, trials, seed};
      std::vector<EncodedSentence> noisy;
      noisy.reserve(test_set.size());
      for (const auto& s : test_set) noisy.push_back(perturb_sentence(s, spec, rng));
      point.accuracies.push_back(nn::evaluate(model, graph, noisy, eval_seed));
    }
    const double n = static_cast<double>(trials);
    point.mean_accuracy = std::accumulate(point.accuracies.begin(), point.accuracies.end(), 0.0) / n;
    if (trials > 1) {
      double ss = 0;
      for (double a : point.accuracies) ss += (a - point.mean_accuracy) * (a - point.mean_accuracy);
      point.std_accuracy = std::sqrt(ss / (n - 1));
    }
    curve.points.push_back(std::move(point));
  }
  return curve;
}

nn::TrainResult adversarial_train(const nn::TrainConfig& config, const TermGraph& graph,
                                  std::span<const EncodedSentence> train_set, std::span<const EncodedSentence> test_set,
                                  std::size_t num_classes, const nn::EpochCallback& on_epoch) {
  if (config.variant != Variant::kPathWalk1) {
    throw UsageError("adversarial training applies to variant pw1 only (got " + std::string(to_string(config.variant)) +
                     ")");
  }
  if (config.adversarial == AdversarialMode::kNone) {
    throw UsageError("adversarial training needs --adv-mode edge1|edge4|edgenode4");
  }
  return nn::train(config, graph, train_set, test_set, num_classes, on_epoch);
}

}  // namespace pathwalk

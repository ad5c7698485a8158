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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <map>

#include "pathwalk/common.h"
#include "pathwalk/robustness.h"
#include "support/support.h"

namespace {

using namespace pathwalk;
using namespace pathwalk::nn;

struct Setup {
  TrainingCorpus corpus;
  TermGraph graph;
  std::vector<EncodedSentence> test;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup x;
    Rng rng(3);
    pwtest::SyntheticSpec spec;
    spec.sentences = 300;
    spec.vocab = 120;
    auto records = pwtest::synthetic_records(rng, spec);
    x.corpus = build_training_corpus(std::vector<LabeledSentence>(records.begin(), records.begin() + 200));
    x.graph = TermGraph::build(x.corpus.sentences, x.corpus.vocab.size());
    x.test = encode_split(std::vector<LabeledSentence>(records.begin() + 200, records.end()), x.corpus.vocab, 2);
    return x;
  }();
  return s;
}

TrainConfig small(Variant v = Variant::kPathWalk1) {
  TrainConfig c;
  c.variant = v;
  c.dim = c.hidden = 12;
  c.batch = 16;
  c.epochs = 3;
  c.max_len = 12;
  return c;
}

TEST(PerturbSentence, ZeroNoiseIsIdentity) {
  Rng rng(1);
  const EncodedSentence s{1, {4, 5, 6}};
  const auto out = perturb_sentence(s, {0, Placement::kAppend, 10}, rng);
  EXPECT_EQ(out.ids, s.ids);
  EXPECT_EQ(out.label, 1);
}

TEST(PerturbSentence, AppendsNoiseAfterAnUnchangedPrefix) {
  Rng rng(1);
  const EncodedSentence s{0, {7, 8}};
  const auto out = perturb_sentence(s, {2, Placement::kAppend, 10}, rng);
  ASSERT_EQ(out.ids.size(), 4u);
  EXPECT_EQ(out.ids[0], 7u);
  EXPECT_EQ(out.ids[1], 8u);
  for (std::size_t i = 2; i < 4; ++i) {
    EXPECT_GE(out.ids[i], 1u);
    EXPECT_LT(out.ids[i], 10u);
  }
}

// Ten tokens (ids 1..10, plus UNK at 0). Expected 100 per token, sd ~9.5.
TEST(PerturbSentence, NoiseIsUniformOverTheVocabulary) {
  Rng rng(2024);
  std::map<NodeId, int> freq;
  const EncodedSentence s{0, {1}};
  for (int draw = 0; draw < 1000; ++draw) ++freq[perturb_sentence(s, {1, Placement::kAppend, 11}, rng).ids.back()];
  ASSERT_EQ(freq.size(), 10u);
  EXPECT_EQ(freq.count(kUnkNode), 0u);
  for (const auto& [id, count] : freq) {
    EXPECT_GE(count, 60) << id;
    EXPECT_LE(count, 140) << id;
  }
}

TEST(PerturbSentence, EmptySentenceIsContractError) {
  Rng rng(1);
  EXPECT_THROW(perturb_sentence(EncodedSentence{0, {}}, {1, Placement::kAppend, 5}, rng), ContractError);
}

TEST(TruncatedNoise, CountsNoiseBeyondTheModelLength) {
  EXPECT_EQ(truncated_noise(5, 3, 20), 0u);
  EXPECT_EQ(truncated_noise(18, 4, 20), 2u);
  EXPECT_EQ(truncated_noise(25, 8, 20), 8u);
}

TEST(RobustnessSweep, ZeroNoiseMatchesEvaluateAndShapeIsRight) {
  const auto& s = setup();
  for (auto v : {Variant::kPathWalk1, Variant::kPathWalk3}) {
    const auto r = train(small(v), s.graph, s.corpus.sentences, s.test, 2);
    const auto curve = robustness_sweep(r.model, s.graph, s.test, s.corpus.vocab.size(), 0, 8, 3, 11);
    ASSERT_EQ(curve.points.size(), 9u);
    EXPECT_EQ(curve.points[0].mean_accuracy, evaluate(r.model, s.graph, s.test));
    EXPECT_EQ(curve.points[0].std_accuracy, 0.0);
    for (std::size_t k = 0; k < 9; ++k) {
      const auto& p = curve.points[k];
      EXPECT_EQ(p.noise_count, k);
      EXPECT_EQ(p.trials, 3u);
      ASSERT_EQ(p.accuracies.size(), 3u);
      EXPECT_GE(p.mean_accuracy, 0.0);
      EXPECT_LE(p.mean_accuracy, 1.0);
      double mean = (p.accuracies[0] + p.accuracies[1] + p.accuracies[2]) / 3;
      EXPECT_NEAR(p.mean_accuracy, mean, 1e-15);
      double ss = 0;
      for (double a : p.accuracies) ss += (a - mean) * (a - mean);
      EXPECT_NEAR(p.std_accuracy, std::sqrt(ss / 2), 1e-15);
    }
    const auto again = robustness_sweep(r.model, s.graph, s.test, s.corpus.vocab.size(), 0, 8, 3, 11);
    for (std::size_t k = 0; k < 9; ++k) EXPECT_EQ(again.points[k].accuracies, curve.points[k].accuracies);
  }
}

TEST(RobustnessSweep, SingleRangeAndConstantClassifier) {
  const auto& s = setup();
  TrainedModel m;
  m.config = small();
  m.num_classes = 2;
  m.graph_fingerprint = s.graph.fingerprint();
  m.params = Parameters<float>::zeros({12, 12, 2}, s.graph.node_count(), s.graph.edge_count());
  m.params.net.out_b = {-3.0f, 3.0f};
  const double prior = evaluate(m, s.graph, s.test);
  const auto curve = robustness_sweep(m, s.graph, s.test, s.corpus.vocab.size(), 0, 8, 2, 5);
  for (const auto& p : curve.points) EXPECT_EQ(p.mean_accuracy, prior);

  const auto one = robustness_sweep(m, s.graph, s.test, s.corpus.vocab.size(), 0, 0, 1, 5);
  EXPECT_EQ(one.points.size(), 1u);
}

TEST(RobustnessSweep, RejectsBadRanges) {
  const auto& s = setup();
  const auto r = train(small(), s.graph, s.corpus.sentences, s.test, 2);
  EXPECT_THROW(robustness_sweep(r.model, s.graph, s.test, s.corpus.vocab.size(), 3, 2, 1, 1), UsageError);
  EXPECT_THROW(robustness_sweep(r.model, s.graph, s.test, s.corpus.vocab.size(), 0, 2, 0, 1), UsageError);
}

TEST(AdversarialTrain, RequiresPw1AndANoiseMode) {
  const auto& s = setup();
  TrainConfig c = small();
  EXPECT_THROW(adversarial_train(c, s.graph, s.corpus.sentences, s.test, 2), UsageError);
  c.adversarial = AdversarialMode::kEdge1;
  c.variant = Variant::kPathWalk2;
  EXPECT_THROW(adversarial_train(c, s.graph, s.corpus.sentences, s.test, 2), UsageError);
}

TEST(AdversarialTrain, ZeroEpsilonReproducesPlainPw1) {
  const auto& s = setup();
  const auto plain = train(small(), s.graph, s.corpus.sentences, s.test, 2);
  for (auto mode : {AdversarialMode::kEdge1, AdversarialMode::kEdge4, AdversarialMode::kEdgeNode4}) {
    TrainConfig c = small();
    c.adversarial = mode;
    c.epsilon = 0.0;
    const auto adv = adversarial_train(c, s.graph, s.corpus.sentences, s.test, 2);
    ASSERT_EQ(adv.report.epochs.size(), plain.report.epochs.size());
    for (std::size_t e = 1; e < adv.report.epochs.size(); ++e) {
      EXPECT_EQ(*adv.report.epochs[e].train_loss, *plain.report.epochs[e].train_loss);
      EXPECT_EQ(adv.report.epochs[e].test_accuracy, plain.report.epochs[e].test_accuracy);
    }
    const auto a = adv.model.params.blocks(), b = plain.model.params.blocks();
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(std::memcmp(a[k].values.data(), b[k].values.data(), a[k].values.size_bytes()), 0) << a[k].name;
    }
  }
}

TEST(AdversarialTrain, NonZeroEpsilonChangesTrainingAndCompletes) {
  const auto& s = setup();
  const auto plain = train(small(), s.graph, s.corpus.sentences, s.test, 2);
  TrainConfig c = small();
  c.adversarial = AdversarialMode::kEdgeNode4;
  const auto adv = adversarial_train(c, s.graph, s.corpus.sentences, s.test, 2);
  EXPECT_NE(*adv.report.epochs[1].train_loss, *plain.report.epochs[1].train_loss);
  for (const auto& e : adv.report.epochs) EXPECT_TRUE(std::isfinite(e.test_accuracy));
}

}  // namespace

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

#include "pathwalk/nn/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "pathwalk/common.h"
#include "pathwalk/nn/bilstm.h"
#include "pathwalk/nn/objective.h"
#include "pathwalk/rng.h"

namespace pathwalk::nn {

std::vector<std::string> validate(const TrainConfig& c) {
  std::vector<std::string> errors;
  if (needs_topology(c.variant) && c.k < 1) errors.push_back("K must be >= 1 for pw2/pw3");
  if (c.max_len < 1) errors.push_back("len must be >= 1");
  if (c.dim < 1) errors.push_back("dim must be >= 1");
  if (c.hidden < 1) errors.push_back("hidden must be >= 1");
  if (c.batch < 1) errors.push_back("batch must be >= 1");
  if (!(c.l2 >= 0.0) || !std::isfinite(c.l2)) errors.push_back("l2 must be a finite value >= 0");
  if (!(c.adam.learning_rate > 0.0) || !std::isfinite(c.adam.learning_rate)) errors.push_back("lr must be > 0");
  if (!(c.adam.beta1 >= 0.0 && c.adam.beta1 < 1.0)) errors.push_back("beta1 must lie in [0, 1)");
  if (!(c.adam.beta2 >= 0.0 && c.adam.beta2 < 1.0)) errors.push_back("beta2 must lie in [0, 1)");
  if (!(c.adam.epsilon > 0.0)) errors.push_back("adam epsilon must be > 0");
  if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) errors.push_back("epsilon must be a finite value >= 0");
  if (c.adversarial != AdversarialMode::kNone && c.variant != Variant::kPathWalk1) {
    errors.push_back("adversarial training applies to the pw1 variant only");
  }
  if (c.threads < 1) errors.push_back("threads must be >= 1");
  return errors;
}

EncodingOptions training_encoding(const TrainConfig& config) {
  EncodingOptions o;
  o.variant = config.variant;
  o.topology.k = std::max<std::size_t>(config.k, 1);
  o.topology.mode = config.topology_mode;
  o.adversarial = config.adversarial;
  o.epsilon = config.epsilon;
  o.pool = config.pool;
  o.length = config.max_len;
  return o;
}

EncodingOptions evaluation_encoding(const TrainConfig& config) {
  EncodingOptions o = training_encoding(config);
  o.adversarial = AdversarialMode::kNone;
  o.epsilon = 0.0;
  return o;
}

SentenceRecipe prepare_recipe(const TermGraph& graph, std::span<const NodeId> sentence, const EncodingOptions& options,
                              std::uint64_t sample_seed) {
  WalkSentence walk = walk_of_words(graph, sentence);
  const std::size_t positions = options.pool == PoolMode::kSum ? kAllPositions : options.length;
  Rng rng(sample_seed);
  SentenceRecipe recipe;
  if (options.adversarial != AdversarialMode::kNone) {
    recipe = build_adversarial_recipe(walk, graph, options.adversarial, options.epsilon, rng, positions);
  } else {
    if (needs_topology(options.variant)) {
      TopologyOptions topo = options.topology;
      topo.max_positions = positions;
      walk.topo = sample_topology(graph, walk.node_ids, topo, rng);
    }
    recipe = build_recipe(walk, options.variant, positions);
  }
  return options.pool == PoolMode::kSum ? pool_sum(recipe) : recipe;
}

namespace {

std::size_t model_length(const TrainConfig& config) { return config.pool == PoolMode::kSum ? 1 : config.max_len; }

void zero_touched_rows(std::span<const LabeledRecipe> items, EmbeddingTables<float>& grads) {
  const std::size_t d = grads.dim();
  for (const LabeledRecipe& item : items) {
    for (const Term& t : item.recipe.terms()) {
      Matrix<float>& table = t.table == TableKind::kNode ? grads.node : grads.edge;
      std::fill_n(table.data() + std::size_t{t.row} * d, d, 0.0f);
    }
  }
}

void add_into(ModelParams<float>& dst, const ModelParams<float>& src) {
  const auto add = [](std::span<float> a, std::span<const float> b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  };
  add(dst.forward.w.values(), src.forward.w.values());
  add(dst.forward.b, src.forward.b);
  add(dst.backward.w.values(), src.backward.w.values());
  add(dst.backward.b, src.backward.b);
  add(dst.out_w.values(), src.out_w.values());
  add(dst.out_b, src.out_b);
}

// Data gradient of one batch. With several threads each worker owns a
// contiguous chunk; chunk gradients are summed in chunk order and embedding
// rows are scattered in item order, so results depend only on the thread count.
double batch_gradient(const Parameters<float>& params, std::span<const LabeledRecipe> items, std::size_t length,
                      float scale, Parameters<float>& grads, std::size_t threads) {
  const std::size_t workers = std::min(threads, items.size());
  if (workers <= 1) {
    Workspace<float> ws;
    return accumulate_data_gradient(params, items, length, scale, grads, ws);
  }
  const std::size_t d = params.net.dims.input_dim;
  std::vector<ModelParams<float>> partial(workers, ModelParams<float>::zeros(params.net.dims));
  std::vector<double> losses(workers, 0.0);
  std::vector<std::vector<float>> d_inputs(items.size(), std::vector<float>(length * d));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  const std::size_t chunk = (items.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        std::vector<float> input(length * d);
        ForwardCache<float> cache;
        for (std::size_t i = w * chunk; i < std::min(items.size(), (w + 1) * chunk); ++i) {
          materialize(items[i].recipe, params.embeddings, length, std::span<float>(input));
          const auto probs = bilstm_forward<float>(params.net, input, length, &cache);
          losses[w] += cross_entropy<float>(probs, items[i].label);
          bilstm_backward<float>(params.net, cache, items[i].label, scale, partial[w], d_inputs[i]);
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  double loss = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    add_into(grads.net, partial[w]);
    loss += losses[w];
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    scatter_gradient<float>(items[i].recipe, d_inputs[i], length, grads.embeddings);
  }
  return loss;
}

}  // namespace

std::uint64_t evaluation_seed(const TrainedModel& model) { return derive_seed(model.config.seed, "eval-topology"); }

std::vector<int> predict(const TrainedModel& model, const TermGraph& graph, std::span<const EncodedSentence> sentences,
                         std::uint64_t eval_seed) {
  check_compatible(model, graph);
  const EncodingOptions options = evaluation_encoding(model.config);
  const std::size_t length = model_length(model.config);
  const std::size_t d = model.params.net.dims.input_dim;
  std::vector<float> input(length * d);
  std::vector<int> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const SentenceRecipe recipe =
        prepare_recipe(graph, sentences[i].ids, options, derive_seed(eval_seed, "sentence", {i}));
    materialize(recipe, model.params.embeddings, length, std::span<float>(input));
    const auto probs = bilstm_forward<float>(model.params.net, input, length);
    out.push_back(static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin()));
  }
  return out;
}

double evaluate(const TrainedModel& model, const TermGraph& graph, std::span<const EncodedSentence> test_set,
                std::optional<std::uint64_t> eval_seed) {
  if (test_set.empty()) return 0.0;
  const auto predictions = predict(model, graph, test_set, eval_seed.value_or(evaluation_seed(model)));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) correct += predictions[i] == test_set[i].label;
  return static_cast<double>(correct) / static_cast<double>(test_set.size());
}

void check_compatible(const TrainedModel& model, const TermGraph& graph) {
  const auto& emb = model.params.embeddings;
  if (emb.node.rows() != graph.node_count() || emb.edge.rows() != graph.edge_count()) {
    throw DataError("model was trained on a graph with " + std::to_string(emb.node.rows()) + " nodes and " +
                    std::to_string(emb.edge.rows()) + " edges, but the supplied graph has " +
                    std::to_string(graph.node_count()) + " nodes and " + std::to_string(graph.edge_count()) +
                    " edges");
  }
  if (model.graph_fingerprint != 0 && model.graph_fingerprint != graph.fingerprint()) {
    throw DataError("model does not belong to the supplied graph (fingerprint mismatch)");
  }
}

TrainResult train(const TrainConfig& config, const TermGraph& graph, std::span<const EncodedSentence> train_set,
                  std::span<const EncodedSentence> test_set, std::size_t num_classes, const EpochCallback& on_epoch) {
  if (const auto errors = validate(config); !errors.empty()) {
    std::string msg = "invalid training configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw UsageError(msg);
  }
  if (num_classes < 1) throw UsageError("at least one class is required");
  if (train_set.empty()) throw DataError("training set is empty");
  const auto started = std::chrono::steady_clock::now();

  TrainResult result;
  TrainedModel& model = result.model;
  model.config = config;
  model.num_classes = num_classes;
  model.graph_fingerprint = graph.fingerprint();
  const ModelDims dims{config.dim, config.hidden, num_classes};
  model.params = Parameters<float>::zeros(dims, graph.node_count(), graph.edge_count());
  Rng init_rng(derive_seed(config.seed, "init"));
  initialize(model.params, config.init, init_rng);
  model.optimizer = AdamState<float>::create(std::as_const(model.params).blocks(), config.adam);
  auto grads = Parameters<float>::zeros(dims, graph.node_count(), graph.edge_count());

  const auto record = [&](EpochRecord r) {
    result.report.epochs.push_back(r);
    if (on_epoch) on_epoch(r);
  };
  record({0, std::nullopt, evaluate(model, graph, test_set)});

  const EncodingOptions encoding = training_encoding(config);
  const std::size_t length = model_length(config);
  std::vector<std::size_t> order(train_set.size());
  std::vector<LabeledRecipe> items;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle(derive_seed(config.seed, "shuffle", {epoch}));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle.uniform_index(i)]);

    double loss_sum = 0;
    for (std::size_t start = 0, batch_no = 0; start < order.size(); start += config.batch, ++batch_no) {
      const std::size_t end = std::min(order.size(), start + config.batch);
      items.clear();
      for (std::size_t i = start; i < end; ++i) {
        const std::size_t idx = order[i];
        const std::uint64_t seed = derive_seed(config.seed, "sample", {epoch, idx});
        items.push_back({prepare_recipe(graph, train_set[idx].ids, encoding, seed), train_set[idx].label});
      }
      try {
        // Embedding gradients stay zero outside the rows touched by the previous batch.
        grads.net = ModelParams<float>::zeros(dims);
        const float scale = 1.0f / static_cast<float>(items.size());
        loss_sum += batch_gradient(model.params, items, length, scale, grads, config.threads);
        adam_step<float>(model.optimizer, model.params.blocks(), std::as_const(grads).blocks(), config.l2);
        zero_touched_rows(items, grads.embeddings);
      } catch (const NumericError& e) {
        throw NumericError("epoch " + std::to_string(epoch) + ", batch " + std::to_string(batch_no) + ": " +
                           e.what());
      }
    }
    const double train_loss =
        loss_sum / static_cast<double>(train_set.size()) + config.l2 * half_squared_norm(model.params);
    record({epoch, train_loss, evaluate(model, graph, test_set)});
  }

  result.report.final_accuracy = result.report.epochs.back().test_accuracy;
  result.report.train_accuracy = evaluate(model, graph, train_set);
  result.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace pathwalk::nn

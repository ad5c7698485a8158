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

#include "pathwalk/representation.h"

#include <algorithm>
#include <string>

#include "pathwalk/simd/kernels.h"

namespace pathwalk {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kNodeOnly: return "node-only";
    case Variant::kPathWalk1: return "pw1";
    case Variant::kPathWalk2: return "pw2";
    case Variant::kPathWalk3: return "pw3";
  }
  return "?";
}

std::string_view to_string(AdversarialMode m) {
  switch (m) {
    case AdversarialMode::kNone: return "none";
    case AdversarialMode::kEdge1: return "edge1";
    case AdversarialMode::kEdge4: return "edge4";
    case AdversarialMode::kEdgeNode4: return "edgenode4";
  }
  return "?";
}

std::string_view to_string(PoolMode m) { return m == PoolMode::kSequence ? "sequence" : "sum"; }

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kNodeOnly, Variant::kPathWalk1, Variant::kPathWalk2, Variant::kPathWalk3}) {
    if (name == to_string(v)) return v;
  }
  throw UsageError("unknown variant '" + std::string(name) + "' (expected node-only|pw1|pw2|pw3)");
}

AdversarialMode parse_adversarial_mode(std::string_view name) {
  for (AdversarialMode m : {AdversarialMode::kNone, AdversarialMode::kEdge1, AdversarialMode::kEdge4,
                            AdversarialMode::kEdgeNode4}) {
    if (name == to_string(m)) return m;
  }
  throw UsageError("unknown adversarial mode '" + std::string(name) + "' (expected none|edge1|edge4|edgenode4)");
}

PoolMode parse_pool_mode(std::string_view name) {
  if (name == "sequence") return PoolMode::kSequence;
  if (name == "sum") return PoolMode::kSum;
  throw UsageError("unknown pool mode '" + std::string(name) + "' (expected sequence|sum)");
}

WalkSentence walk_of_words(const TermGraph& graph, std::span<const NodeId> sentence) {
  if (sentence.empty()) throw ContractError("walk_of_words: empty sentence");
  WalkSentence w;
  w.node_ids.assign(sentence.begin(), sentence.end());
  w.inner_edge_ids.resize(sentence.size());
  for (std::size_t i = 1; i < sentence.size(); ++i) w.inner_edge_ids[i] = graph.edge_id(sentence[i - 1], sentence[i]);
  return w;
}

namespace {

void add_walk_terms(const WalkSentence& w, std::size_t i, bool with_inner_edge, SentenceRecipe& recipe) {
  recipe.add(TableKind::kNode, w.node_ids[i]);
  if (with_inner_edge && w.inner_edge_ids[i]) recipe.add(TableKind::kEdge, *w.inner_edge_ids[i]);
}

}  // namespace

SentenceRecipe build_recipe(const WalkSentence& w, Variant variant, std::size_t max_positions) {
  if (needs_topology(variant) && !w.topo) {
    throw ContractError("variant " + std::string(to_string(variant)) + " requires a topology sample");
  }
  SentenceRecipe recipe;
  const std::size_t n = std::min(w.true_length(), max_positions);
  for (std::size_t i = 0; i < n; ++i) {
    add_walk_terms(w, i, variant != Variant::kNodeOnly, recipe);
    if (needs_topology(variant) && i < w.topo->positions.size()) {
      const PositionTopology& slot = w.topo->positions[i];
      for (EdgeId e : slot.edges) recipe.add(TableKind::kEdge, e);
      if (variant == Variant::kPathWalk3) {
        for (NodeId u : slot.nodes) recipe.add(TableKind::kNode, u);
      }
    }
    recipe.close_position();
  }
  return recipe;
}

AdversarialCounts adversarial_counts(AdversarialMode mode) {
  switch (mode) {
    case AdversarialMode::kNone: return {0, 0};
    case AdversarialMode::kEdge1: return {1, 0};
    case AdversarialMode::kEdge4: return {4, 0};
    case AdversarialMode::kEdgeNode4: return {4, 4};
  }
  return {0, 0};
}

SentenceRecipe build_adversarial_recipe(const WalkSentence& w, const TermGraph& graph, AdversarialMode mode,
                                        double epsilon, Rng& rng, std::size_t max_positions) {
  const AdversarialCounts counts = adversarial_counts(mode);
  SentenceRecipe recipe;
  const std::size_t n = std::min(w.true_length(), max_positions);
  for (std::size_t i = 0; i < n; ++i) {
    add_walk_terms(w, i, true, recipe);
    const NodeId v = w.node_ids[i];
    const auto in_ids = graph.in_edges(v);
    const auto in_nodes = graph.in_neighbors(v);
    for (std::size_t s = 0; s < counts.edges; ++s) {
      std::uint32_t row;
      if (!in_ids.empty()) {
        row = in_ids[rng.uniform_index(in_ids.size())];
      } else if (graph.edge_count() > 0) {
        row = static_cast<std::uint32_t>(rng.uniform_index(graph.edge_count()));
      } else {
        break;
      }
      if (epsilon != 0.0) recipe.add(TableKind::kEdge, row, epsilon);
    }
    for (std::size_t s = 0; s < counts.nodes; ++s) {
      std::uint32_t row;
      if (!in_nodes.empty()) {
        row = in_nodes[rng.uniform_index(in_nodes.size())];
      } else if (graph.node_count() > 1) {
        row = static_cast<std::uint32_t>(1 + rng.uniform_index(graph.node_count() - 1));
      } else {
        break;
      }
      if (epsilon != 0.0) recipe.add(TableKind::kNode, row, epsilon);
    }
    recipe.close_position();
  }
  return recipe;
}

SentenceRecipe pool_sum(const SentenceRecipe& recipe) {
  SentenceRecipe pooled;
  for (const Term& t : recipe.terms()) pooled.add(t.table, t.row, t.weight);
  pooled.close_position();
  return pooled;
}

template <typename Real>
void materialize(const SentenceRecipe& recipe, const EmbeddingTables<Real>& tables, std::size_t length,
                 std::span<Real> out) {
  const std::size_t d = tables.dim();
  if (out.size() != length * d) throw ContractError("materialize: output buffer has the wrong size");
  std::fill(out.begin(), out.end(), Real(0));
  const auto& k = simd::kernels<Real>();
  const std::size_t n = std::min(recipe.positions(), length);
  for (std::size_t i = 0; i < n; ++i) {
    Real* dst = out.data() + i * d;
    for (const Term& t : recipe.position(i)) {
      const Matrix<Real>& table = t.table == TableKind::kNode ? tables.node : tables.edge;
      const Real* src = table.data() + std::size_t{t.row} * d;
      if (t.weight == 1.0) {
        for (std::size_t c = 0; c < d; ++c) dst[c] += src[c];
      } else {
        k.axpy(static_cast<Real>(t.weight), src, dst, d);
      }
    }
  }
}

template <typename Real>
void scatter_gradient(const SentenceRecipe& recipe, std::span<const Real> d_input, std::size_t length,
                      EmbeddingTables<Real>& grads) {
  const std::size_t d = grads.dim();
  const auto& k = simd::kernels<Real>();
  const std::size_t n = std::min(recipe.positions(), length);
  for (std::size_t i = 0; i < n; ++i) {
    const Real* src = d_input.data() + i * d;
    for (const Term& t : recipe.position(i)) {
      Matrix<Real>& table = t.table == TableKind::kNode ? grads.node : grads.edge;
      k.axpy(static_cast<Real>(t.weight), src, table.data() + std::size_t{t.row} * d, d);
    }
  }
}

template <typename Real>
Matrix<Real> compose_positions(const WalkSentence& w, const EmbeddingTables<Real>& tables, Variant variant) {
  const SentenceRecipe recipe = build_recipe(w, variant);
  Matrix<Real> out(recipe.positions(), tables.dim());
  materialize(recipe, tables, recipe.positions(), out.values());
  return out;
}

template <typename Real>
Matrix<Real> compose_adversarial(const WalkSentence& w, const TermGraph& graph, const EmbeddingTables<Real>& tables,
                                 AdversarialMode mode, double epsilon, Rng& rng) {
  const SentenceRecipe recipe = build_adversarial_recipe(w, graph, mode, epsilon, rng);
  Matrix<Real> out(recipe.positions(), tables.dim());
  materialize(recipe, tables, recipe.positions(), out.values());
  return out;
}

template <typename Real>
PaddedBatch<Real> pad_sequences(std::span<const Matrix<Real>> sequences, std::size_t length) {
  if (length < 1) throw ContractError("pad_sequences: length must be >= 1");
  PaddedBatch<Real> batch;
  batch.length = length;
  batch.dim = sequences.empty() ? 0 : sequences.front().cols();
  batch.data.assign(sequences.size() * length * batch.dim, Real(0));
  for (std::size_t b = 0; b < sequences.size(); ++b) {
    const Matrix<Real>& seq = sequences[b];
    if (seq.cols() != batch.dim) throw ContractError("pad_sequences: inconsistent vector width");
    const std::size_t keep = std::min(seq.rows(), length);
    std::copy_n(seq.data(), keep * batch.dim, batch.data.begin() + static_cast<std::ptrdiff_t>(b * length * batch.dim));
    batch.lengths.push_back(keep);
  }
  return batch;
}

#define PATHWALK_INSTANTIATE(Real)                                                                                 \
  template void materialize<Real>(const SentenceRecipe&, const EmbeddingTables<Real>&, std::size_t,                 \
                                  std::span<Real>);                                                                \
  template void scatter_gradient<Real>(const SentenceRecipe&, std::span<const Real>, std::size_t,                   \
                                       EmbeddingTables<Real>&);                                                    \
  template Matrix<Real> compose_positions<Real>(const WalkSentence&, const EmbeddingTables<Real>&, Variant);       \
  template Matrix<Real> compose_adversarial<Real>(const WalkSentence&, const TermGraph&,                          \
                                                  const EmbeddingTables<Real>&, AdversarialMode, double, Rng&);    \
  template PaddedBatch<Real> pad_sequences<Real>(std::span<const Matrix<Real>>, std::size_t);

PATHWALK_INSTANTIATE(float)
PATHWALK_INSTANTIATE(double)
#undef PATHWALK_INSTANTIATE

}  // namespace pathwalk

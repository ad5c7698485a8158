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
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pathwalk/matrix.h"
#include "pathwalk/rng.h"
#include "pathwalk/termgraph.h"
#include "pathwalk/topology.h"

namespace pathwalk {

enum class Variant { kNodeOnly, kPathWalk1, kPathWalk2, kPathWalk3 };
enum class AdversarialMode { kNone, kEdge1, kEdge4, kEdgeNode4 };
// kSum collapses a sentence into a single summed position (debug mode).
enum class PoolMode { kSequence, kSum };

std::string_view to_string(Variant v);
std::string_view to_string(AdversarialMode m);
std::string_view to_string(PoolMode m);
Variant parse_variant(std::string_view name);
AdversarialMode parse_adversarial_mode(std::string_view name);
PoolMode parse_pool_mode(std::string_view name);

inline bool needs_topology(Variant v) { return v == Variant::kPathWalk2 || v == Variant::kPathWalk3; }

// Alternating node / directed-edge walk of a sentence. inner_edge_ids[i] is the
// edge arriving at position i from i-1; entry 0 is always absent.
struct WalkSentence {
  std::vector<NodeId> node_ids;
  std::vector<std::optional<EdgeId>> inner_edge_ids;
  std::optional<TopologySample> topo;

  std::size_t true_length() const { return node_ids.size(); }
};

WalkSentence walk_of_words(const TermGraph& graph, std::span<const NodeId> sentence);

template <typename Real>
struct EmbeddingTables {
  Matrix<Real> node;  // node_count x d
  Matrix<Real> edge;  // edge_count x d

  EmbeddingTables() = default;
  EmbeddingTables(std::size_t node_count, std::size_t edge_count, std::size_t dim)
      : node(node_count, dim), edge(edge_count, dim) {}
  std::size_t dim() const { return node.cols(); }
};

enum class TableKind : std::uint8_t { kNode, kEdge };

struct Term {
  TableKind table = TableKind::kNode;
  std::uint32_t row = 0;
  double weight = 1.0;
  bool operator==(const Term&) const = default;
};

// Per-position list of weighted embedding rows whose sum is the position's
// input vector. The same recipe routes input gradients back to the rows.
class SentenceRecipe {
 public:
  SentenceRecipe() : offsets_{0} {}

  void add(TableKind table, std::uint32_t row, double weight = 1.0) { terms_.push_back({table, row, weight}); }
  void close_position() { offsets_.push_back(static_cast<std::uint32_t>(terms_.size())); }

  std::size_t positions() const { return offsets_.size() - 1; }
  std::span<const Term> position(std::size_t i) const {
    return std::span<const Term>(terms_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::span<const Term> terms() const { return terms_; }

  bool operator==(const SentenceRecipe&) const = default;

 private:
  std::vector<Term> terms_;
  std::vector<std::uint32_t> offsets_;
};

inline constexpr std::size_t kAllPositions = std::numeric_limits<std::size_t>::max();

// Variant composition for the first min(n, max_positions) positions:
//   NodeOnly  v_i
//   PW1       v_i + Ein_i
//   PW2       PW1 + sum of sampled topological edges
//   PW3       PW2 + sum of sampled topological nodes
// Absent inner edges and empty samples contribute nothing. PW2/PW3 require w.topo.
SentenceRecipe build_recipe(const WalkSentence& w, Variant variant, std::size_t max_positions = kAllPositions);

struct AdversarialCounts {
  std::size_t edges = 0;
  std::size_t nodes = 0;
};
AdversarialCounts adversarial_counts(AdversarialMode mode);

// PW1 plus epsilon-weighted rows drawn with replacement per position: edges from
// the in-edges of v_i (any edge when v_i has none) and, for kEdgeNode4, nodes from
// the in-neighbours of v_i (any non-UNK node when v_i has none).
SentenceRecipe build_adversarial_recipe(const WalkSentence& w, const TermGraph& graph, AdversarialMode mode,
                                        double epsilon, Rng& rng, std::size_t max_positions = kAllPositions);

// Sums all positions into one.
SentenceRecipe pool_sum(const SentenceRecipe& recipe);

// Writes the first min(positions, length) composed vectors into `out`
// (length x d, row-major) and zero-fills the rest.
template <typename Real>
void materialize(const SentenceRecipe& recipe, const EmbeddingTables<Real>& tables, std::size_t length,
                 std::span<Real> out);

// Adds weight * d_input[i] to every row named at position i (i < min(positions, rows)).
template <typename Real>
void scatter_gradient(const SentenceRecipe& recipe, std::span<const Real> d_input, std::size_t length,
                      EmbeddingTables<Real>& grads);

template <typename Real>
Matrix<Real> compose_positions(const WalkSentence& w, const EmbeddingTables<Real>& tables, Variant variant);

template <typename Real>
Matrix<Real> compose_adversarial(const WalkSentence& w, const TermGraph& graph, const EmbeddingTables<Real>& tables,
                                 AdversarialMode mode, double epsilon, Rng& rng);

template <typename Real>
struct PaddedBatch {
  std::size_t length = 0;
  std::size_t dim = 0;
  std::vector<Real> data;            // batch x length x dim
  std::vector<std::size_t> lengths;  // true lengths capped at `length`

  std::span<const Real> item(std::size_t b) const {
    return std::span<const Real>(data).subspan(b * length * dim, length * dim);
  }
};

// Truncates to the first l positions or right-pads with zero vectors.
template <typename Real>
PaddedBatch<Real> pad_sequences(std::span<const Matrix<Real>> sequences, std::size_t length);

}  // namespace pathwalk

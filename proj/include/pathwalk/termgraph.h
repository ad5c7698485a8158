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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pathwalk/common.h"
#include "pathwalk/corpus.h"

namespace pathwalk {

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  bool operator==(const Edge&) const = default;
};

struct GraphStats {
  std::size_t node_count = 0;  // includes the UNK node
  std::size_t edge_count = 0;
  std::map<std::size_t, std::size_t> in_degree_histogram;  // degree -> node frequency
};

// Directed word graph. Each observed bigram (a, b) becomes one edge a -> b;
// edge ids follow first-occurrence order and multiplicity is not stored.
// Adjacency is kept in CSR form with neighbours sorted ascending.
class TermGraph {
 public:
  TermGraph() = default;

  // Scans every consecutive token pair of every sentence. Ids must be < node_count.
  static TermGraph build(std::span<const EncodedSentence> corpus, std::size_t node_count);
  // Rebuilds from an explicit edge list (edge id = index). Duplicate pairs are rejected.
  static TermGraph from_edges(std::size_t node_count, std::vector<Edge> edges);

  std::optional<EdgeId> edge_id(NodeId src, NodeId dst) const;
  bool has_edge(NodeId src, NodeId dst) const { return edge_id(src, dst).has_value(); }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  // Sorted ascending; out_edges(n)[k] is the edge to out_neighbors(n)[k].
  std::span<const NodeId> out_neighbors(NodeId n) const { return slice(out_offsets_, out_nodes_, n); }
  std::span<const EdgeId> out_edges(NodeId n) const { return slice(out_offsets_, out_edge_ids_, n); }
  std::span<const NodeId> in_neighbors(NodeId n) const { return slice(in_offsets_, in_nodes_, n); }
  std::span<const EdgeId> in_edges(NodeId n) const { return slice(in_offsets_, in_edge_ids_, n); }

  GraphStats stats() const;

  // FNV-1a over the node count and the edge list; ties checkpoints to a graph.
  std::uint64_t fingerprint() const;

 private:
  template <typename T>
  static std::span<const T> slice(const std::vector<std::size_t>& offsets, const std::vector<T>& data, NodeId n) {
    return std::span<const T>(data).subspan(offsets[n], offsets[n + 1] - offsets[n]);
  }
  void index_adjacency();

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<NodeId> out_nodes_, in_nodes_;
  std::vector<EdgeId> out_edge_ids_, in_edge_ids_;
};

}  // namespace pathwalk

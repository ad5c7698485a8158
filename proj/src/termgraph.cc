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

#include "pathwalk/termgraph.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace pathwalk {
namespace {

std::uint64_t pair_key(NodeId src, NodeId dst) { return (std::uint64_t{src} << 32) | dst; }

// Counting sort of edge ids into CSR rows keyed by one endpoint, neighbours ascending.
void build_csr(std::size_t node_count, const std::vector<Edge>& edges, bool by_src, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& nodes, std::vector<EdgeId>& ids) {
  offsets.assign(node_count + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_src ? e.src : e.dst) + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  nodes.resize(edges.size());
  ids.resize(edges.size());
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    const std::size_t slot = cursor[by_src ? e.src : e.dst]++;
    nodes[slot] = by_src ? e.dst : e.src;
    ids[slot] = id;
  }
  std::vector<std::pair<NodeId, EdgeId>> row;
  for (std::size_t n = 0; n < node_count; ++n) {
    row.clear();
    for (std::size_t k = offsets[n]; k < offsets[n + 1]; ++k) row.emplace_back(nodes[k], ids[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < row.size(); ++k) {
      nodes[offsets[n] + k] = row[k].first;
      ids[offsets[n] + k] = row[k].second;
    }
  }
}

}  // namespace

TermGraph TermGraph::build(std::span<const EncodedSentence> corpus, std::size_t node_count) {
  TermGraph g;
  g.node_count_ = node_count;
  std::unordered_map<std::uint64_t, EdgeId> seen;
  for (const auto& sentence : corpus) {
    for (NodeId id : sentence.ids) {
      if (id >= node_count) throw ContractError("token id " + std::to_string(id) + " >= node count");
    }
    for (std::size_t i = 1; i < sentence.ids.size(); ++i) {
      const Edge e{sentence.ids[i - 1], sentence.ids[i]};
      if (seen.emplace(pair_key(e.src, e.dst), static_cast<EdgeId>(g.edges_.size())).second) {
        g.edges_.push_back(e);
      }
    }
  }
  g.index_adjacency();
  return g;
}

TermGraph TermGraph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  TermGraph g;
  g.node_count_ = node_count;
  std::unordered_map<std::uint64_t, EdgeId> seen;
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.src >= node_count || e.dst >= node_count) {
      throw DataError("edge " + std::to_string(id) + " references a node outside the vocabulary");
    }
    if (!seen.emplace(pair_key(e.src, e.dst), id).second) {
      throw DataError("edge " + std::to_string(id) + " duplicates an earlier edge");
    }
  }
  g.edges_ = std::move(edges);
  g.index_adjacency();
  return g;
}

void TermGraph::index_adjacency() {
  build_csr(node_count_, edges_, true, out_offsets_, out_nodes_, out_edge_ids_);
  build_csr(node_count_, edges_, false, in_offsets_, in_nodes_, in_edge_ids_);
}

std::optional<EdgeId> TermGraph::edge_id(NodeId src, NodeId dst) const {
  if (src >= node_count_ || dst >= node_count_) return std::nullopt;
  const auto targets = out_neighbors(src);
  const auto it = std::lower_bound(targets.begin(), targets.end(), dst);
  if (it == targets.end() || *it != dst) return std::nullopt;
  return out_edges(src)[static_cast<std::size_t>(it - targets.begin())];
}

GraphStats TermGraph::stats() const {
  GraphStats s;
  s.node_count = node_count_;
  s.edge_count = edges_.size();
  for (std::size_t n = 0; n < node_count_; ++n) ++s.in_degree_histogram[in_offsets_[n + 1] - in_offsets_[n]];
  return s;
}

std::uint64_t TermGraph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  mix(node_count_);
  mix(edges_.size());
  for (const Edge& e : edges_) mix(pair_key(e.src, e.dst));
  return h;
}

}  // namespace pathwalk

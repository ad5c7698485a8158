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

#include "pathwalk/topology.h"

#include <algorithm>
#include <numeric>
#include <string>

namespace pathwalk {
namespace {

// Appends the detours that end at `anchor`, in entry-descending then node-ascending order.
void anchor_candidates(const TermGraph& graph, std::span<const NodeId> sentence,
                       std::span<const NodeId> sentence_nodes, std::size_t anchor, int max_detour,
                       std::vector<SimplexCandidate>& out) {
  const NodeId target = sentence[anchor];
  const auto in_nodes = graph.in_neighbors(target);
  const auto in_ids = graph.in_edges(target);
  const auto external = [&](NodeId u) {
    return !std::binary_search(sentence_nodes.begin(), sentence_nodes.end(), u);
  };
  const std::size_t lowest = anchor >= static_cast<std::size_t>(max_detour) ? anchor - max_detour : 0;
  for (std::size_t entry = anchor; entry-- > lowest;) {
    const NodeId source = sentence[entry];
    const auto out_nodes = graph.out_neighbors(source);
    const auto out_ids = graph.out_edges(source);
    const int order = static_cast<int>(anchor - entry) + 1;
    // Walk the shorter list and probe the other one.
    if (out_nodes.size() <= in_nodes.size()) {
      for (std::size_t k = 0; k < out_nodes.size(); ++k) {
        const NodeId u = out_nodes[k];
        if (!external(u)) continue;
        if (auto in_edge = graph.edge_id(u, target)) {
          out.push_back({anchor, u, entry, *in_edge, out_ids[k], order});
        }
      }
    } else {
      for (std::size_t k = 0; k < in_nodes.size(); ++k) {
        const NodeId u = in_nodes[k];
        if (!external(u)) continue;
        if (auto out_edge = graph.edge_id(source, u)) {
          out.push_back({anchor, u, entry, in_ids[k], *out_edge, order});
        }
      }
    }
  }
}

std::vector<NodeId> sorted_unique(std::span<const NodeId> ids) {
  std::vector<NodeId> nodes(ids.begin(), ids.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

// Indices of min(k, n) draws without replacement, or all of [0, n) when n <= k.
std::vector<std::size_t> choose_indices(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n <= k) return idx;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace

std::vector<SimplexCandidate> enumerate_simplices(const TermGraph& graph, std::span<const NodeId> sentence,
                                                  int max_detour) {
  if (sentence.empty()) throw ContractError("enumerate_simplices: empty sentence");
  if (max_detour < 1 || max_detour > kMaxDetour) throw ContractError("enumerate_simplices: max_detour must be 1..3");
  const auto nodes = sorted_unique(sentence);
  std::vector<SimplexCandidate> out;
  for (std::size_t j = 1; j < sentence.size(); ++j) anchor_candidates(graph, sentence, nodes, j, max_detour, out);
  return out;
}

std::string_view to_string(TopologyMode mode) { return mode == TopologyMode::kSimplex ? "simplex" : "inedge"; }

TopologyMode parse_topology_mode(std::string_view name) {
  if (name == "simplex") return TopologyMode::kSimplex;
  if (name == "inedge") return TopologyMode::kInEdge;
  throw UsageError("unknown topology mode '" + std::string(name) + "' (expected simplex|inedge)");
}

TopologySample sample_topology(const TermGraph& graph, std::span<const NodeId> sentence,
                               const TopologyOptions& options, Rng& rng) {
  if (options.k < 1) throw ContractError("sample_topology: K must be >= 1");
  TopologySample sample;
  sample.positions.resize(sentence.size());
  const auto nodes = sorted_unique(sentence);
  const std::size_t limit = std::min(sentence.size(), options.max_positions);
  std::vector<SimplexCandidate> pool;
  for (std::size_t j = 0; j < limit; ++j) {
    PositionTopology& slot = sample.positions[j];
    if (options.mode == TopologyMode::kSimplex) {
      pool.clear();
      anchor_candidates(graph, sentence, nodes, j, options.max_detour, pool);
      for (std::size_t pick : choose_indices(pool.size(), options.k, rng)) {
        slot.edges.push_back(pool[pick].in_edge);
        slot.nodes.push_back(pool[pick].external_node);
      }
    } else {
      const NodeId target = sentence[j];
      const auto sources = graph.in_neighbors(target);
      const auto ids = graph.in_edges(target);
      std::vector<std::size_t> eligible;
      for (std::size_t k = 0; k < sources.size(); ++k) {
        if (j > 0 && sources[k] == sentence[j - 1]) continue;
        eligible.push_back(k);
      }
      for (std::size_t pick : choose_indices(eligible.size(), options.k, rng)) {
        slot.edges.push_back(ids[eligible[pick]]);
        slot.nodes.push_back(sources[eligible[pick]]);
      }
    }
  }
  return sample;
}

}  // namespace pathwalk

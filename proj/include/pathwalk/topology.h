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
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "pathwalk/common.h"
#include "pathwalk/rng.h"
#include "pathwalk/termgraph.h"

namespace pathwalk {

// A length-2 detour v_entry -> u -> v_anchor that leaves the sentence through
// exactly one external node u and returns to a later sentence position.
struct SimplexCandidate {
  std::size_t anchor = 0;  // position j of v_j
  NodeId external_node = 0;
  std::size_t entry = 0;   // position i < j of v_i
  EdgeId in_edge = 0;      // u -> v_j
  EdgeId out_edge = 0;     // v_i -> u
  int order = 0;           // (j - i) + 1: 2 triangle, 3 quadrangle, 4 pentagon

  bool operator==(const SimplexCandidate&) const = default;
};

inline constexpr int kMaxDetour = 3;

// Every candidate with 1 <= j - i <= max_detour and u outside the sentence.
// Ordered by anchor ascending, entry descending, external node ascending.
std::vector<SimplexCandidate> enumerate_simplices(const TermGraph& graph, std::span<const NodeId> sentence,
                                                  int max_detour = kMaxDetour);

enum class TopologyMode {
  kSimplex,  // candidates from enumerate_simplices
  kInEdge,   // any in-edge of v_j other than the inner edge from v_{j-1}
};

std::string_view to_string(TopologyMode mode);
TopologyMode parse_topology_mode(std::string_view name);

struct PositionTopology {
  std::vector<EdgeId> edges;  // sampled in-edges u -> v_j
  std::vector<NodeId> nodes;  // their source nodes u
};

struct TopologySample {
  std::vector<PositionTopology> positions;
};

struct TopologyOptions {
  std::size_t k = 5;
  TopologyMode mode = TopologyMode::kSimplex;
  int max_detour = kMaxDetour;
  // Positions at or beyond this index are left empty (they are truncated away later).
  std::size_t max_positions = std::numeric_limits<std::size_t>::max();
};

// Draws min(K, |pool_j|) candidates per anchor uniformly without replacement.
TopologySample sample_topology(const TermGraph& graph, std::span<const NodeId> sentence,
                               const TopologyOptions& options, Rng& rng);

}  // namespace pathwalk

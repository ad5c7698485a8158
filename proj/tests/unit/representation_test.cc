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

#include <algorithm>
#include <cstring>

#include "pathwalk/common.h"
#include "pathwalk/representation.h"
#include "support/support.h"

namespace {

using namespace pathwalk;
using pwtest::graph_of;

EmbeddingTables<double> random_tables(Rng& rng, std::size_t nodes, std::size_t edges, std::size_t d,
                                      bool integers = false) {
  EmbeddingTables<double> t(nodes, edges, d);
  for (auto* m : {&t.node, &t.edge}) {
    for (auto& x : m->values()) {
      x = integers ? static_cast<double>(static_cast<int>(rng.uniform_index(21)) - 10) : rng.uniform(-1, 1);
    }
  }
  return t;
}

bool bitwise_equal(const Matrix<double>& a, const Matrix<double>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(WalkOfWords, AlternatesNodesAndArrivingEdges) {
  const TermGraph g = graph_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 5}, {1, 4}});
  const std::vector<NodeId> s{0, 1, 2, 3, 5};
  const WalkSentence w = walk_of_words(g, s);
  EXPECT_EQ(w.node_ids, s);
  ASSERT_EQ(w.inner_edge_ids.size(), 5u);
  EXPECT_FALSE(w.inner_edge_ids[0].has_value());
  EXPECT_EQ(w.inner_edge_ids[1], g.edge_id(0, 1));
  EXPECT_EQ(w.inner_edge_ids[2], g.edge_id(1, 2));
  EXPECT_EQ(w.inner_edge_ids[3], g.edge_id(2, 3));
  EXPECT_EQ(w.inner_edge_ids[4], g.edge_id(3, 5));
  EXPECT_EQ(w.true_length(), 5u);
}

TEST(WalkOfWords, SingleTokenAndUnseenBigram) {
  const TermGraph g = graph_of(8, {{1, 2}});
  const std::vector<NodeId> one{7};
  const WalkSentence w1 = walk_of_words(g, one);
  EXPECT_EQ(w1.node_ids, one);
  EXPECT_FALSE(w1.inner_edge_ids[0].has_value());

  const std::vector<NodeId> unseen{1, 5};
  EXPECT_FALSE(walk_of_words(g, unseen).inner_edge_ids[1].has_value());
}

TEST(ComposePositions, ZeroTablesGiveZeroVectors) {
  const TermGraph g = graph_of(4, {{1, 2}, {2, 3}, {1, 3}});
  WalkSentence w = walk_of_words(g, std::vector<NodeId>{1, 2, 3});
  w.topo = TopologySample{{{}, {{2}, {1}}, {}}};
  const EmbeddingTables<double> zero(4, 3, 5);
  for (auto v : {Variant::kNodeOnly, Variant::kPathWalk1, Variant::kPathWalk2, Variant::kPathWalk3}) {
    const auto out = compose_positions(w, zero, v);
    EXPECT_EQ(out.rows(), 3u);
    EXPECT_TRUE(std::all_of(out.values().begin(), out.values().end(), [](double x) { return x == 0.0; }));
  }
}

TEST(ComposePositions, SingleTokenPw1IsTheNodeRow) {
  Rng rng(1);
  const TermGraph g = graph_of(4, {{1, 2}});
  const auto t = random_tables(rng, 4, 1, 3);
  const auto out = compose_positions(walk_of_words(g, std::vector<NodeId>{2}), t, Variant::kPathWalk1);
  ASSERT_EQ(out.rows(), 1u);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(out(0, c), t.node(2, c));
}

TEST(ComposePositions, HandComputedTrianglePw3) {
  // Nodes 1, 2, 8; edges 1->2 (id 0), 1->8 (id 1), 8->2 (id 2); d = 2.
  const TermGraph g = graph_of(9, {{1, 2}, {1, 8}, {8, 2}});
  EmbeddingTables<double> t(9, 3, 2);
  t.node(1, 0) = 1;   t.node(1, 1) = 2;
  t.node(2, 0) = 10;  t.node(2, 1) = 20;
  t.node(8, 0) = 100; t.node(8, 1) = 200;
  t.edge(0, 0) = 0.5; t.edge(0, 1) = 0.25;
  t.edge(1, 0) = 7;   t.edge(1, 1) = 7;
  t.edge(2, 0) = 3;   t.edge(2, 1) = 4;
  const std::vector<NodeId> s{1, 2};
  WalkSentence w = walk_of_words(g, s);
  Rng rng(1);
  w.topo = sample_topology(g, s, {1, TopologyMode::kSimplex}, rng);

  const auto pw3 = compose_positions(w, t, Variant::kPathWalk3);
  EXPECT_EQ(pw3(0, 0), 1);
  EXPECT_EQ(pw3(0, 1), 2);
  EXPECT_EQ(pw3(1, 0), 10 + 0.5 + 3 + 100);
  EXPECT_EQ(pw3(1, 1), 20 + 0.25 + 4 + 200);

  const auto pw2 = compose_positions(w, t, Variant::kPathWalk2);
  EXPECT_EQ(pw2(1, 0), 10 + 0.5 + 3);
  const auto pw1 = compose_positions(w, t, Variant::kPathWalk1);
  EXPECT_EQ(pw1(1, 1), 20 + 0.25);
  const auto node_only = compose_positions(w, t, Variant::kNodeOnly);
  EXPECT_EQ(node_only(1, 0), 10);
}

TEST(ComposePositions, TopologyVariantsWithoutSampleAreContractErrors) {
  const TermGraph g = graph_of(3, {{1, 2}});
  const WalkSentence w = walk_of_words(g, std::vector<NodeId>{1, 2});
  EmbeddingTables<double> t(3, 1, 2);
  EXPECT_THROW(compose_positions(w, t, Variant::kPathWalk2), ContractError);
  EXPECT_THROW(compose_positions(w, t, Variant::kPathWalk3), ContractError);
  EXPECT_NO_THROW(compose_positions(w, t, Variant::kPathWalk1));
}

TEST(ComposeAdversarial, ModeCounts) {
  EXPECT_EQ(adversarial_counts(AdversarialMode::kEdge1).edges, 1u);
  EXPECT_EQ(adversarial_counts(AdversarialMode::kEdge4).edges, 4u);
  EXPECT_EQ(adversarial_counts(AdversarialMode::kEdgeNode4).edges, 4u);
  EXPECT_EQ(adversarial_counts(AdversarialMode::kEdgeNode4).nodes, 4u);
  EXPECT_EQ(adversarial_counts(AdversarialMode::kEdge4).nodes, 0u);
}

TEST(ComposeAdversarial, Edge1AddsOneEdgeRowPerPosition) {
  const TermGraph g = graph_of(5, {{1, 2}, {3, 2}, {2, 4}});
  const WalkSentence w = walk_of_words(g, std::vector<NodeId>{1, 2, 4});
  Rng rng(9);
  const auto r = build_adversarial_recipe(w, g, AdversarialMode::kEdge1, 1.0, rng);
  const auto base = build_recipe(w, Variant::kPathWalk1);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.position(i).size(), base.position(i).size() + 1);
    EXPECT_EQ(r.position(i).back().table, TableKind::kEdge);
    EXPECT_EQ(r.position(i).back().weight, 1.0);
  }
  // Node 1 has no in-edges, so its noise comes from the whole edge table.
  EXPECT_LT(r.position(0).back().row, g.edge_count());
  // Node 2's in-edges are 1->2 and 3->2.
  const auto row = r.position(1).back().row;
  EXPECT_TRUE(row == *g.edge_id(1, 2) || row == *g.edge_id(3, 2));
}

TEST(ComposeAdversarial, Edge4DrawsWithReplacementFromInEdges) {
  const TermGraph g = graph_of(6, {{1, 2}, {3, 2}, {4, 5}});
  const WalkSentence w = walk_of_words(g, std::vector<NodeId>{2});
  const std::vector<EdgeId> allowed{*g.edge_id(1, 2), *g.edge_id(3, 2)};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto r = build_adversarial_recipe(w, g, AdversarialMode::kEdgeNode4, 0.5, rng);
    const auto terms = r.position(0);
    ASSERT_EQ(terms.size(), 1u + 4u + 4u);
    for (std::size_t k = 1; k < 5; ++k) {
      ASSERT_EQ(terms[k].table, TableKind::kEdge);
      ASSERT_NE(std::find(allowed.begin(), allowed.end(), terms[k].row), allowed.end());
      ASSERT_EQ(terms[k].weight, 0.5);
    }
    for (std::size_t k = 5; k < 9; ++k) {
      ASSERT_EQ(terms[k].table, TableKind::kNode);
      ASSERT_TRUE(terms[k].row == 1 || terms[k].row == 3);
    }
  }
}

TEST(ComposeAdversarial, NodeWithoutInNeighboursDrawsNonUnkNodes) {
  const TermGraph g = graph_of(4, {{2, 3}});
  const WalkSentence w = walk_of_words(g, std::vector<NodeId>{1});
  Rng rng(4);
  const auto r = build_adversarial_recipe(w, g, AdversarialMode::kEdgeNode4, 1.0, rng);
  for (const auto& t : r.position(0).subspan(5)) {
    EXPECT_GE(t.row, 1u);
    EXPECT_LT(t.row, 4u);
  }
}

// Identities: epsilon = 0 is PW1 bit for bit; empty pools make PW2/PW3 equal PW1.
TEST(CompositionIdentity, ZeroEpsilonAndEmptyPoolsReduceToPw1) {
  Rng gen(77);
  for (int round = 0; round < 50; ++round) {
    const TermGraph g = pwtest::random_graph(gen, 20, 0.15);
    const auto s = pwtest::random_sentence(gen, 20, 10);
    const auto t = random_tables(gen, g.node_count(), std::max<std::size_t>(g.edge_count(), 1), 4);
    WalkSentence w = walk_of_words(g, s);
    const auto pw1 = compose_positions(w, t, Variant::kPathWalk1);
    for (auto mode : {AdversarialMode::kEdge1, AdversarialMode::kEdge4, AdversarialMode::kEdgeNode4}) {
      Rng rng(derive_seed(1, "adv", {static_cast<std::uint64_t>(round)}));
      ASSERT_TRUE(bitwise_equal(compose_adversarial(w, g, t, mode, 0.0, rng), pw1));
    }
    w.topo = TopologySample{std::vector<PositionTopology>(s.size())};
    ASSERT_TRUE(bitwise_equal(compose_positions(w, t, Variant::kPathWalk2), pw1));
    ASSERT_TRUE(bitwise_equal(compose_positions(w, t, Variant::kPathWalk3), pw1));
  }
}

TEST(CompositionProperty, LinearInTables) {
  Rng gen(5);
  for (int round = 0; round < 30; ++round) {
    const TermGraph g = pwtest::random_graph(gen, 15, 0.2);
    if (g.edge_count() == 0) continue;
    const auto s = pwtest::random_sentence(gen, 15, 8);
    WalkSentence w = walk_of_words(g, s);
    Rng srng(static_cast<std::uint64_t>(round));
    w.topo = sample_topology(g, s, {3, TopologyMode::kSimplex}, srng);
    // Integer-valued entries keep every sum exact.
    const auto a = random_tables(gen, g.node_count(), g.edge_count(), 3, true);
    const auto b = random_tables(gen, g.node_count(), g.edge_count(), 3, true);
    EmbeddingTables<double> sum = a;
    for (std::size_t k = 0; k < sum.node.size(); ++k) sum.node.values()[k] += b.node.values()[k];
    for (std::size_t k = 0; k < sum.edge.size(); ++k) sum.edge.values()[k] += b.edge.values()[k];
    for (auto v : {Variant::kNodeOnly, Variant::kPathWalk1, Variant::kPathWalk2, Variant::kPathWalk3}) {
      const auto ca = compose_positions(w, a, v), cb = compose_positions(w, b, v), cs = compose_positions(w, sum, v);
      ASSERT_EQ(cs.rows(), s.size());
      for (std::size_t k = 0; k < cs.size(); ++k) ASSERT_EQ(cs.values()[k], ca.values()[k] + cb.values()[k]);
    }
  }
}

// scatter_gradient is the adjoint of materialize: <M(E), G> == <E, S(G)>.
TEST(RecipeProperty, ScatterIsAdjointOfMaterialize) {
  Rng gen(8);
  for (int round = 0; round < 30; ++round) {
    const TermGraph g = pwtest::random_graph(gen, 12, 0.25);
    if (g.edge_count() == 0) continue;
    const auto s = pwtest::random_sentence(gen, 12, 9);
    Rng arng(static_cast<std::uint64_t>(round));
    const auto recipe =
        build_adversarial_recipe(walk_of_words(g, s), g, AdversarialMode::kEdgeNode4, 0.7, arng);
    const std::size_t length = 6, d = 3;
    const auto e = random_tables(gen, g.node_count(), g.edge_count(), d);
    std::vector<double> m(length * d), grad(length * d);
    materialize(recipe, e, length, std::span<double>(m));
    for (auto& x : grad) x = gen.uniform(-1, 1);
    EmbeddingTables<double> sg(g.node_count(), g.edge_count(), d);
    scatter_gradient(recipe, std::span<const double>(grad), length, sg);
    double lhs = 0, rhs = 0;
    for (std::size_t k = 0; k < m.size(); ++k) lhs += m[k] * grad[k];
    for (std::size_t k = 0; k < e.node.size(); ++k) rhs += e.node.values()[k] * sg.node.values()[k];
    for (std::size_t k = 0; k < e.edge.size(); ++k) rhs += e.edge.values()[k] * sg.edge.values()[k];
    ASSERT_NEAR(lhs, rhs, 1e-12);
    // Truncated positions are zero.
    for (std::size_t k = std::min(s.size(), length) * d; k < m.size(); ++k) ASSERT_EQ(m[k], 0.0);
  }
}

TEST(PoolSum, CollapsesToOnePosition) {
  const TermGraph g = graph_of(4, {{1, 2}, {2, 3}});
  const auto r = build_recipe(walk_of_words(g, std::vector<NodeId>{1, 2, 3}), Variant::kPathWalk1);
  const auto pooled = pool_sum(r);
  EXPECT_EQ(pooled.positions(), 1u);
  EXPECT_EQ(pooled.terms().size(), r.terms().size());
}

TEST(PadSequences, PadsTruncatesAndRecordsLengths) {
  Matrix<double> three(3, 2, 1.0), long_seq(25, 2), exact(5, 2, 2.0);
  for (std::size_t r = 0; r < 25; ++r) long_seq(r, 0) = static_cast<double>(r);
  const std::vector<Matrix<double>> batch{three, long_seq, exact};
  const auto p5 = pad_sequences<double>(batch, 5);
  EXPECT_EQ(p5.lengths, (std::vector<std::size_t>{3, 5, 5}));
  const auto first = p5.item(0);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(first[k], 1.0);
  for (std::size_t k = 6; k < 10; ++k) EXPECT_EQ(first[k], 0.0);
  const auto third = p5.item(2);
  for (double x : third) EXPECT_EQ(x, 2.0);

  const auto p20 = pad_sequences<double>(std::vector<Matrix<double>>{long_seq}, 20);
  EXPECT_EQ(p20.lengths[0], 20u);
  EXPECT_EQ(p20.item(0)[19 * 2], 19.0);
}

TEST(VariantNames, RoundTrip) {
  for (auto v : {Variant::kNodeOnly, Variant::kPathWalk1, Variant::kPathWalk2, Variant::kPathWalk3}) {
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  for (auto m : {AdversarialMode::kNone, AdversarialMode::kEdge1, AdversarialMode::kEdge4,
                 AdversarialMode::kEdgeNode4}) {
    EXPECT_EQ(parse_adversarial_mode(to_string(m)), m);
  }
  for (auto m : {PoolMode::kSequence, PoolMode::kSum}) EXPECT_EQ(parse_pool_mode(to_string(m)), m);
  EXPECT_THROW(parse_variant("pw4"), UsageError);
  EXPECT_THROW(parse_adversarial_mode("edge2"), UsageError);
}

}  // namespace

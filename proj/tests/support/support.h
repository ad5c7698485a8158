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

// Fixtures and generators shared by the unit and acceptance suites.

#include <filesystem>
#include <string>
#include <vector>

#include "pathwalk/corpus.h"
#include "pathwalk/rng.h"
#include "pathwalk/termgraph.h"

namespace pwtest {

using pathwalk::EncodedSentence;
using pathwalk::NodeId;
using pathwalk::Rng;
using pathwalk::TermGraph;

TermGraph graph_of(std::size_t node_count, std::vector<pathwalk::Edge> edges);

// Directed graph on nodes [1, n) (node 0 stays isolated, like UNK); each
// ordered pair, self-loops included, is an edge with probability p.
TermGraph random_graph(Rng& rng, std::size_t node_count, double p);

// Ids in [1, node_count), repeats allowed, length in [1, max_len].
std::vector<NodeId> random_sentence(Rng& rng, std::size_t node_count, std::size_t max_len);

std::vector<EncodedSentence> random_corpus(Rng& rng, std::size_t sentences, std::size_t node_count,
                                           std::size_t max_len, int classes = 2);

// Twenty sentences over six tokens; class 1 iff the token "good" occurs.
std::vector<pathwalk::LabeledSentence> toy_records();

struct SyntheticSpec {
  std::size_t sentences = 400;
  std::size_t vocab = 300;
  std::size_t min_len = 4;
  std::size_t max_len = 14;
  std::size_t cue_words = 10;      // per class
  std::size_t cues_per_sentence = 2;
  double label_noise = 0.0;        // probability of flipping the label
};

// Balanced binary sentiment-like corpus: Zipf filler tokens plus class cue tokens.
std::vector<pathwalk::LabeledSentence> synthetic_records(Rng& rng, const SyntheticSpec& spec);

void write_tsv(const std::filesystem::path& path, const std::vector<pathwalk::LabeledSentence>& records);

// Fresh, empty directory under the system temp dir.
std::filesystem::path fresh_dir(const std::string& name);

std::string read_file(const std::filesystem::path& path);

}  // namespace pwtest

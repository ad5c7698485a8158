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

#include <filesystem>
#include <string>

#include "pathwalk/corpus.h"
#include "pathwalk/termgraph.h"

namespace pathwalk {

inline constexpr int kGraphFormatVersion = 1;

// A term graph together with the vocabulary and tokenizer it was built with.
struct GraphBundle {
  TokenizerMode tokenizer = TokenizerMode::kWhitespace;
  Vocab vocab;
  TermGraph graph;
  // Class count of the training split; not part of the file format.
  std::size_t num_classes = 0;
};

// Versioned JSON document:
//   {"format_version":1,"tokenizer_mode":"whitespace","vocab":[...],"edges":[[src,dst],...]}
// vocab[i] is the token of node i (vocab[0] is the UNK placeholder); edge id = array index.
std::string graph_to_json(const GraphBundle& bundle);
GraphBundle graph_from_json(const std::string& text);

void save_graph(const std::filesystem::path& path, const GraphBundle& bundle);
GraphBundle load_graph(const std::filesystem::path& path);

// Builds the graph of an encoded training split and keeps its vocabulary.
GraphBundle build_graph_bundle(const TrainingCorpus& corpus, TokenizerMode mode);

}  // namespace pathwalk

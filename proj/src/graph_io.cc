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

#include "pathwalk/graph_io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pathwalk {

using nlohmann::json;

std::string graph_to_json(const GraphBundle& bundle) {
  json edges = json::array();
  for (const Edge& e : bundle.graph.edges()) edges.push_back({e.src, e.dst});
  json doc = {
      {"format_version", kGraphFormatVersion},
      {"tokenizer_mode", std::string(to_string(bundle.tokenizer))},
      {"vocab", bundle.vocab.tokens()},
      {"edges", std::move(edges)},
  };
  return doc.dump() + "\n";
}

GraphBundle graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kGraphFormatVersion) {
      throw DataError("unsupported graph format_version " + std::to_string(version));
    }
    GraphBundle bundle;
    bundle.tokenizer = parse_tokenizer_mode(doc.at("tokenizer_mode").get<std::string>());
    bundle.vocab = Vocab::from_tokens(doc.at("vocab").get<std::vector<std::string>>());
    std::vector<Edge> edges;
    const auto& raw = doc.at("edges");
    edges.reserve(raw.size());
    for (const auto& pair : raw) {
      if (!pair.is_array() || pair.size() != 2) throw DataError("graph edge entries must be [src, dst] pairs");
      edges.push_back({pair[0].get<NodeId>(), pair[1].get<NodeId>()});
    }
    bundle.graph = TermGraph::from_edges(bundle.vocab.size(), std::move(edges));
    return bundle;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed graph file: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("malformed graph file: ") + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const GraphBundle& bundle) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << graph_to_json(bundle);
  if (!out) throw DataError("failed writing " + path.string());
}

GraphBundle load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return graph_from_json(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

GraphBundle build_graph_bundle(const TrainingCorpus& corpus, TokenizerMode mode) {
  GraphBundle bundle;
  bundle.tokenizer = mode;
  bundle.vocab = corpus.vocab;
  bundle.graph = TermGraph::build(corpus.sentences, corpus.vocab.size());
  bundle.num_classes = corpus.num_classes;
  return bundle;
}

}  // namespace pathwalk

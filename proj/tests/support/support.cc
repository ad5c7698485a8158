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

#include "support/support.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pwtest {

using pathwalk::Edge;
using pathwalk::LabeledSentence;

TermGraph graph_of(std::size_t node_count, std::vector<Edge> edges) {
  return TermGraph::from_edges(node_count, std::move(edges));
}

TermGraph random_graph(Rng& rng, std::size_t node_count, double p) {
  std::vector<Edge> edges;
  for (NodeId a = 1; a < node_count; ++a) {
    for (NodeId b = 1; b < node_count; ++b) {
      if (rng.uniform01() < p) edges.push_back({a, b});
    }
  }
  // Shuffle so edge ids are not sorted by endpoint.
  for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.uniform_index(i)]);
  return TermGraph::from_edges(node_count, std::move(edges));
}

std::vector<NodeId> random_sentence(Rng& rng, std::size_t node_count, std::size_t max_len) {
  std::vector<NodeId> s(1 + rng.uniform_index(max_len));
  for (auto& id : s) id = static_cast<NodeId>(1 + rng.uniform_index(node_count - 1));
  return s;
}

std::vector<EncodedSentence> random_corpus(Rng& rng, std::size_t sentences, std::size_t node_count,
                                           std::size_t max_len, int classes) {
  std::vector<EncodedSentence> out(sentences);
  for (auto& s : out) {
    s.label = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(classes)));
    s.ids = random_sentence(rng, node_count, max_len);
  }
  return out;
}

std::vector<LabeledSentence> toy_records() {
  const char* lines[20][2] = {
      {"1", "good movie"},     {"0", "bad movie"},      {"1", "a good plot"},   {"0", "a bad plot"},
      {"1", "movie good"},     {"0", "plot bad"},       {"1", "good good"},     {"0", "bad bad"},
      {"1", "the good movie"}, {"0", "the bad movie"},  {"1", "good the plot"}, {"0", "bad the plot"},
      {"1", "a movie good"},   {"0", "a movie"},        {"1", "plot a good"},   {"0", "the plot"},
      {"1", "good"},           {"0", "movie the a"},    {"1", "the a good"},    {"0", "plot movie bad"},
  };
  std::vector<LabeledSentence> out;
  for (const auto& line : lines) {
    out.push_back({std::stoi(line[0]), pathwalk::tokenize(line[1], pathwalk::TokenizerMode::kWhitespace)});
  }
  return out;
}

std::vector<LabeledSentence> synthetic_records(Rng& rng, const SyntheticSpec& spec) {
  const std::size_t fillers = spec.vocab - 2 * spec.cue_words;
  std::vector<double> cdf(fillers);
  double total = 0;
  for (std::size_t i = 0; i < fillers; ++i) cdf[i] = (total += 1.0 / static_cast<double>(i + 1));
  auto filler = [&] {
    const double u = rng.uniform01() * total;
    const auto idx = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    return "w" + std::to_string(std::min(idx, fillers - 1));
  };
  std::vector<LabeledSentence> out;
  for (std::size_t n = 0; n < spec.sentences; ++n) {
    const int label = static_cast<int>(n % 2);
    LabeledSentence s;
    s.label = rng.uniform01() < spec.label_noise ? 1 - label : label;
    const std::size_t len = spec.min_len + rng.uniform_index(spec.max_len - spec.min_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.tokens.push_back(filler());
    for (std::size_t c = 0; c < spec.cues_per_sentence; ++c) {
      const std::string cue = (label ? "pos" : "neg") + std::to_string(rng.uniform_index(spec.cue_words));
      s.tokens.insert(s.tokens.begin() + static_cast<std::ptrdiff_t>(rng.uniform_index(s.tokens.size() + 1)), cue);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void write_tsv(const std::filesystem::path& path, const std::vector<LabeledSentence>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (const auto& r : records) {
    out << r.label << '\t';
    for (std::size_t i = 0; i < r.tokens.size(); ++i) out << (i ? " " : "") << r.tokens[i];
    out << '\n';
  }
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pathwalk-tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pwtest

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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pathwalk/common.h"

namespace pathwalk {

enum class TokenizerMode { kChar, kWhitespace };

std::string_view to_string(TokenizerMode mode);
TokenizerMode parse_tokenizer_mode(std::string_view name);

// Splits UTF-8 text into tokens. kChar yields one token per Unicode scalar
// value (whitespace dropped); kWhitespace splits on runs of whitespace.
// No case folding or punctuation stripping. Throws DataError on invalid UTF-8.
std::vector<std::string> tokenize(std::string_view text, TokenizerMode mode);

struct LabeledSentence {
  int label = 0;
  std::vector<std::string> tokens;
};

// Token <-> node-id bijection. Id 0 is the reserved UNK node; real tokens get
// ids 1.. in first-occurrence order.
class Vocab {
 public:
  static constexpr std::string_view kUnkToken = "<unk>";

  Vocab();

  NodeId add(const std::string& token);
  std::optional<NodeId> find(std::string_view token) const;
  // Falls back to kUnkNode for unseen tokens.
  NodeId encode(std::string_view token) const;
  const std::string& token(NodeId id) const { return tokens_.at(id); }

  // Includes the UNK node.
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Rebuilds a vocabulary from an id-ordered token list whose first entry is UNK.
  static Vocab from_tokens(std::vector<std::string> tokens);

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> index_;
};

struct EncodedSentence {
  int label = 0;
  std::vector<NodeId> ids;
};

std::vector<NodeId> encode(const Vocab& vocab, std::span<const std::string> tokens);
std::vector<std::string> decode(const Vocab& vocab, std::span<const NodeId> ids);

// Parses `label<TAB>text` records. Rejects missing tabs, non-integer or negative
// labels, and sentences that tokenize to nothing; errors carry the line number.
std::vector<LabeledSentence> read_tsv(std::istream& in, TokenizerMode mode,
                                      const std::string& source_name = "<stream>");
std::vector<LabeledSentence> read_tsv(const std::filesystem::path& path, TokenizerMode mode);

struct TrainingCorpus {
  Vocab vocab;
  std::vector<EncodedSentence> sentences;
  std::size_t num_classes = 0;
};

// Builds the vocabulary from the training split; the class count is max label + 1.
TrainingCorpus build_training_corpus(std::span<const LabeledSentence> sentences);
TrainingCorpus load_dataset(const std::filesystem::path& path, TokenizerMode mode);

// Encodes a held-out split against an existing vocabulary. Labels outside
// [0, num_classes) are a DataError.
std::vector<EncodedSentence> encode_split(std::span<const LabeledSentence> sentences,
                                          const Vocab& vocab, std::size_t num_classes);
std::vector<EncodedSentence> load_dataset(const std::filesystem::path& path, TokenizerMode mode,
                                          const Vocab& vocab, std::size_t num_classes);

}  // namespace pathwalk

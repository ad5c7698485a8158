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

#include "pathwalk/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace pathwalk {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

CodePoint decode_utf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  std::size_t length;
  char32_t value;
  if (lead < 0x80) {
    return {lead, 1};
  } else if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    throw DataError("invalid UTF-8 lead byte at offset " + std::to_string(pos));
  }
  if (pos + length > text.size()) throw DataError("truncated UTF-8 sequence at offset " + std::to_string(pos));
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) throw DataError("invalid UTF-8 continuation at offset " + std::to_string(pos + i));
    value = (value << 6) | (cont & 0x3F);
  }
  static constexpr char32_t kMinForLength[] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMinForLength[length] || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
    throw DataError("invalid UTF-8 scalar value at offset " + std::to_string(pos));
  }
  return {value, length};
}

bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

}  // namespace

std::string_view to_string(TokenizerMode mode) {
  return mode == TokenizerMode::kChar ? "char" : "whitespace";
}

TokenizerMode parse_tokenizer_mode(std::string_view name) {
  if (name == "char") return TokenizerMode::kChar;
  if (name == "whitespace") return TokenizerMode::kWhitespace;
  throw UsageError("unknown tokenizer mode '" + std::string(name) + "' (expected char|whitespace)");
}

std::vector<std::string> tokenize(std::string_view text, TokenizerMode mode) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = decode_utf8(text, pos);
    const std::string_view raw = text.substr(pos, cp.length);
    pos += cp.length;
    if (is_space(cp.value)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (mode == TokenizerMode::kChar) {
      tokens.emplace_back(raw);
    } else {
      current.append(raw);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// The UNK entry is not indexed, so a literal "<unk>" in the text is an ordinary token.
Vocab::Vocab() { tokens_.emplace_back(kUnkToken); }

NodeId Vocab::add(const std::string& token) {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(tokens_.size());
  tokens_.push_back(token);
  index_.emplace(token, id);
  return id;
}

std::optional<NodeId> Vocab::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Vocab::encode(std::string_view token) const { return find(token).value_or(kUnkNode); }

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  if (tokens.empty()) throw DataError("vocabulary must contain the UNK entry");
  Vocab vocab;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (vocab.add(tokens[i]) != i) throw DataError("duplicate vocabulary token '" + tokens[i] + "'");
  }
  return vocab;
}

std::vector<NodeId> encode(const Vocab& vocab, std::span<const std::string> tokens) {
  std::vector<NodeId> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(vocab.encode(t));
  return ids;
}

std::vector<std::string> decode(const Vocab& vocab, std::span<const NodeId> ids) {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (NodeId id : ids) tokens.push_back(vocab.token(id));
  return tokens;
}

std::vector<LabeledSentence> read_tsv(std::istream& in, TokenizerMode mode, const std::string& source_name) {
  std::vector<LabeledSentence> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto where = [&] { return source_name + ":" + std::to_string(line_no) + ": "; };
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError(where() + "malformed record (expected label<TAB>text)");
    const std::string_view label_field(line.data(), tab);
    int label = 0;
    auto [ptr, ec] = std::from_chars(label_field.data(), label_field.data() + label_field.size(), label);
    if (ec != std::errc() || ptr != label_field.data() + label_field.size() || label_field.empty()) {
      throw DataError(where() + "label '" + std::string(label_field) + "' is not an integer");
    }
    if (label < 0) throw DataError(where() + "label must be non-negative");
    std::vector<std::string> tokens;
    try {
      tokens = tokenize(std::string_view(line).substr(tab + 1), mode);
    } catch (const DataError& e) {
      throw DataError(where() + e.what());
    }
    if (tokens.empty()) throw DataError(where() + "sentence has no tokens");
    records.push_back({label, std::move(tokens)});
  }
  if (records.empty()) throw DataError(source_name + ": no records");
  return records;
}

std::vector<LabeledSentence> read_tsv(const std::filesystem::path& path, TokenizerMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_tsv(in, mode, path.string());
}

TrainingCorpus build_training_corpus(std::span<const LabeledSentence> sentences) {
  TrainingCorpus corpus;
  int max_label = -1;
  corpus.sentences.reserve(sentences.size());
  for (const auto& s : sentences) {
    EncodedSentence encoded{s.label, {}};
    encoded.ids.reserve(s.tokens.size());
    for (const auto& t : s.tokens) encoded.ids.push_back(corpus.vocab.add(t));
    corpus.sentences.push_back(std::move(encoded));
    max_label = std::max(max_label, s.label);
  }
  corpus.num_classes = static_cast<std::size_t>(max_label + 1);
  return corpus;
}

TrainingCorpus load_dataset(const std::filesystem::path& path, TokenizerMode mode) {
  return build_training_corpus(read_tsv(path, mode));
}

std::vector<EncodedSentence> encode_split(std::span<const LabeledSentence> sentences, const Vocab& vocab,
                                          std::size_t num_classes) {
  std::vector<EncodedSentence> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto& s = sentences[i];
    if (static_cast<std::size_t>(s.label) >= num_classes) {
      throw DataError("record " + std::to_string(i + 1) + ": label " + std::to_string(s.label) +
                      " is outside the training label set [0, " + std::to_string(num_classes) + ")");
    }
    out.push_back({s.label, encode(vocab, s.tokens)});
  }
  return out;
}

std::vector<EncodedSentence> load_dataset(const std::filesystem::path& path, TokenizerMode mode, const Vocab& vocab,
                                          std::size_t num_classes) {
  try {
    return encode_split(read_tsv(path, mode), vocab, num_classes);
  } catch (const DataError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw DataError(path.string() + ": " + msg);
  }
}

}  // namespace pathwalk

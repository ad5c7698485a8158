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
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathwalk/corpus.h"
#include "pathwalk/nn/trainer.h"

namespace pathwalk {

// Where test-time noise words go. Only appending is supported.
enum class Placement { kAppend };

std::string_view to_string(Placement p);
Placement parse_placement(std::string_view name);

// Everything a command needs to reproduce a run. Echoed into every artifact.
struct ExperimentConfig {
  nn::TrainConfig train;
  TokenizerMode tokenizer = TokenizerMode::kWhitespace;
  std::size_t trials = 5;
  std::size_t noise_min = 0;
  std::size_t noise_max = 8;
  Placement placement = Placement::kAppend;
  std::vector<std::size_t> k_list;
  std::string train_path;
  std::string test_path;
  std::string graph_path;
  std::string checkpoint_path;
  std::string out_path;
};

// Fixed model length: 10 for character-tokenized input, 20 otherwise.
std::size_t default_length(TokenizerMode mode);

std::vector<std::string> validate(const ExperimentConfig& config);

nlohmann::ordered_json to_json(const nn::TrainConfig& config);
nn::TrainConfig train_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

}  // namespace pathwalk

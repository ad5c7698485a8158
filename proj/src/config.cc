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

#include "pathwalk/config.h"

#include <string>

namespace pathwalk {

std::string_view to_string(Placement) { return "append"; }

Placement parse_placement(std::string_view name) {
  if (name == "append") return Placement::kAppend;
  throw UsageError("unknown placement '" + std::string(name) + "' (only append is supported)");
}

std::size_t default_length(TokenizerMode mode) { return mode == TokenizerMode::kChar ? 10 : 20; }

std::vector<std::string> validate(const ExperimentConfig& config) {
  auto errors = nn::validate(config.train);
  if (config.trials < 1) errors.push_back("trials must be >= 1");
  if (config.noise_min > config.noise_max) errors.push_back("noise-min must not exceed noise-max");
  for (std::size_t k : config.k_list) {
    if (k < 1) errors.push_back("every K in the sweep list must be >= 1");
  }
  return errors;
}

nlohmann::ordered_json to_json(const nn::TrainConfig& c) {
  return {
      {"variant", std::string(to_string(c.variant))},
      {"K", c.k},
      {"topology_mode", std::string(to_string(c.topology_mode))},
      {"dim", c.dim},
      {"hidden", c.hidden},
      {"len", c.max_len},
      {"batch", c.batch},
      {"epochs", c.epochs},
      {"l2", c.l2},
      {"lr", c.adam.learning_rate},
      {"beta1", c.adam.beta1},
      {"beta2", c.adam.beta2},
      {"adam_epsilon", c.adam.epsilon},
      {"epsilon", c.epsilon},
      {"adv_mode", std::string(to_string(c.adversarial))},
      {"pool", std::string(to_string(c.pool))},
      {"init_weight_range", c.init.weight_range},
      {"init_forget_bias", c.init.forget_bias},
      {"init_embedding_scale", c.init.embedding_scale},
      {"seed", c.seed},
      {"threads", c.threads},
  };
}

nn::TrainConfig train_config_from_json(const nlohmann::json& j) {
  nn::TrainConfig c;
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.k = j.at("K").get<std::size_t>();
  c.topology_mode = parse_topology_mode(j.at("topology_mode").get<std::string>());
  c.dim = j.at("dim").get<std::size_t>();
  c.hidden = j.at("hidden").get<std::size_t>();
  c.max_len = j.at("len").get<std::size_t>();
  c.batch = j.at("batch").get<std::size_t>();
  c.epochs = j.at("epochs").get<std::size_t>();
  c.l2 = j.at("l2").get<double>();
  c.adam.learning_rate = j.at("lr").get<double>();
  c.adam.beta1 = j.at("beta1").get<double>();
  c.adam.beta2 = j.at("beta2").get<double>();
  c.adam.epsilon = j.at("adam_epsilon").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.adversarial = parse_adversarial_mode(j.at("adv_mode").get<std::string>());
  c.pool = parse_pool_mode(j.at("pool").get<std::string>());
  c.init.weight_range = j.at("init_weight_range").get<double>();
  c.init.forget_bias = j.at("init_forget_bias").get<double>();
  c.init.embedding_scale = j.at("init_embedding_scale").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<std::size_t>();
  return c;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j = to_json(c.train);
  j["tokenizer"] = std::string(to_string(c.tokenizer));
  j["trials"] = c.trials;
  j["noise_min"] = c.noise_min;
  j["noise_max"] = c.noise_max;
  j["placement"] = std::string(to_string(c.placement));
  j["K_list"] = c.k_list;
  j["train"] = c.train_path;
  j["test"] = c.test_path;
  j["graph"] = c.graph_path;
  j["checkpoint"] = c.checkpoint_path;
  j["out"] = c.out_path;
  return j;
}

}  // namespace pathwalk

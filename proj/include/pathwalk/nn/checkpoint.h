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

#include "json.hpp"
#include "pathwalk/nn/trainer.h"

namespace pathwalk::nn {

inline constexpr char kCheckpointMagic[8] = {'P', 'W', 'C', 'K', 'P', 'T', '0', '1'};
inline constexpr int kCheckpointFormatVersion = 1;

// Layout (see docs/checkpoint.md): 8-byte magic, u64 little-endian header
// length, JSON header, then raw little-endian float32 arrays at the offsets the
// header lists. Parameters come first, then Adam first and second moments.
void save_checkpoint(const std::filesystem::path& path, const TrainedModel& model,
                     const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

// Throws DataError on a bad magic, truncated payload, or inconsistent header.
TrainedModel load_checkpoint(const std::filesystem::path& path);

// Header only, without reading the payload.
nlohmann::json read_checkpoint_header(const std::filesystem::path& path);

}  // namespace pathwalk::nn

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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathwalk {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Node 0 is reserved for tokens that never occur in the training corpus.
inline constexpr NodeId kUnkNode = 0;

// Error taxonomy. Each class maps to one process exit code in the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or command-line usage (exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed input files, IO failures, and checkpoint/graph mismatches (exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values encountered in parameters, inputs, or gradients (exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumeric = 3,
};

}  // namespace pathwalk

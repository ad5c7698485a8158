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

#include "pathwalk/simd/kernels.h"

namespace pathwalk::simd::detail {

// Defined in the AVX2 translation unit; only called after a CPU feature check.
const KernelTable<float>* avx2_float_table();
const KernelTable<double>* avx2_double_table();

}  // namespace pathwalk::simd::detail

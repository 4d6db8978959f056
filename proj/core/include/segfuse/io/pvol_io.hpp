// Copyright 2026 The Segfuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>

#include "segfuse/prob_volume.hpp"

namespace segfuse {

// Probability volumes travel as flat little-endian float32 binary with a
// 16-byte header: magic "PVOL", then width, height, channels as 32-bit
// little-endian unsigned integers. Data follows pixel-major, channels
// innermost.

ProbVolume read_prob_volume(const std::filesystem::path& path);
void write_prob_volume(const std::filesystem::path& path,
                       const ProbVolume& volume);

}  // namespace segfuse

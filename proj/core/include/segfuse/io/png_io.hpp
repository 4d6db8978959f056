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

#include "segfuse/label_map.hpp"

namespace segfuse {

// Label maps travel as single-channel 8-bit PNG, pixel value = class id,
// ignore = the catalog's ignore id. Anything else (RGB, palette, 16-bit)
// is rejected; this library does no image decoding beyond label rasters.

LabelMap read_label_png(const std::filesystem::path& path);

/// Writes via a temporary file in the target directory followed by an
/// atomic rename, so concurrent readers never observe a partial raster.
void write_label_png(const std::filesystem::path& path, const LabelMap& map);

}  // namespace segfuse

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

#include <cstddef>
#include <span>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

// H x W x C per-pixel class probabilities, the dense semantic prediction.
// Layout: row-major pixels, channels innermost. Channel c corresponds to
// catalog entry index c.
class ProbVolume {
 public:
  /// Validates that every pixel's probabilities are non-negative and sum to
  /// one within 1e-6 absolute.
  ProbVolume(int width, int height, int channels, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }

  std::span<const float> pixel(std::size_t i) const {
    return {data_.data() + i * channels_, static_cast<std::size_t>(channels_)};
  }
  std::span<const float> data() const { return data_; }

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<float> data_;
};

/// Per-pixel winning class. Ties go to the lowest class id so the result is
/// deterministic. Throws CatalogError when the channel count does not match
/// the catalog size.
LabelMap argmax_labels(const ProbVolume& probs, const ClassCatalog& catalog);

}  // namespace segfuse

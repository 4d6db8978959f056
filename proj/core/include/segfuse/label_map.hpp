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
#include "segfuse/types.hpp"

namespace segfuse {

// H x W raster of class ids (plus the catalog's ignore id). Row-major.
// The universal currency between ground truth, dense predictions, fused
// output, and pseudo ground truth.
class LabelMap {
 public:
  LabelMap(int width, int height, std::vector<ClassId> data);
  LabelMap(int width, int height, ClassId fill);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return data_.size(); }

  ClassId at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  ClassId operator[](std::size_t i) const { return data_[i]; }

  std::span<const ClassId> data() const { return data_; }

  bool same_size(const LabelMap& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  /// Throws CatalogError when any pixel is neither a catalog class nor the
  /// ignore id.
  void validate_against(const ClassCatalog& catalog) const;

  /// True when any pixel equals `value`.
  bool contains_value(ClassId value) const;

  bool operator==(const LabelMap&) const = default;

 private:
  int width_;
  int height_;
  std::vector<ClassId> data_;
};

}  // namespace segfuse

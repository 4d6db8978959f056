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

#include "segfuse/label_map.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "segfuse/errors.hpp"

namespace segfuse {

LabelMap::LabelMap(int width, int height, std::vector<ClassId> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width_ < 0 || height_ < 0) {
    throw SizeError("label map dimensions must be non-negative");
  }
  const std::size_t expected =
      static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  if (data_.size() != expected) {
    throw SizeError("label map data has " + std::to_string(data_.size()) +
                    " pixels, expected " + std::to_string(expected));
  }
}

LabelMap::LabelMap(int width, int height, ClassId fill)
    : LabelMap(width, height,
               std::vector<ClassId>(
                   static_cast<std::size_t>(std::max(width, 0)) *
                       static_cast<std::size_t>(std::max(height, 0)),
                   fill)) {}

void LabelMap::validate_against(const ClassCatalog& catalog) const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const ClassId v = data_[i];
    if (v != catalog.ignore_id() && !catalog.contains(v)) {
      throw CatalogError("label map pixel " + std::to_string(i) +
                         " carries value " + std::to_string(int{v}) +
                         " unknown to catalog '" + catalog.name() + "'");
    }
  }
}

bool LabelMap::contains_value(ClassId value) const {
  return std::find(data_.begin(), data_.end(), value) != data_.end();
}

}  // namespace segfuse

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

#include "segfuse/catalog.hpp"

#include <utility>

#include "segfuse/errors.hpp"

namespace segfuse {

ClassCatalog::ClassCatalog(std::string name, std::vector<ClassEntry> entries,
                           ClassId ignore_id)
    : name_(std::move(name)),
      entries_(std::move(entries)),
      ignore_id_(ignore_id) {
  index_by_id_.fill(-1);
  if (entries_.empty()) {
    throw CatalogError("catalog '" + name_ + "' has no classes");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ClassEntry& e = entries_[i];
    if (index_by_id_[e.id] >= 0) {
      throw CatalogError("catalog '" + name_ + "' duplicates class id " +
                         std::to_string(int{e.id}));
    }
    if (e.id == ignore_id_) {
      throw CatalogError("catalog '" + name_ + "' class id " +
                         std::to_string(int{e.id}) +
                         " collides with the ignore id");
    }
    index_by_id_[e.id] = static_cast<std::int16_t>(i);
  }
}

std::size_t ClassCatalog::index_of(ClassId id) const {
  const std::int16_t idx = index_by_id_[id];
  if (idx < 0) {
    throw CatalogError("class id " + std::to_string(int{id}) +
                       " is not part of catalog '" + name_ + "'");
  }
  return static_cast<std::size_t>(idx);
}

std::optional<ClassId> ClassCatalog::id_of_name(std::string_view name) const {
  for (const ClassEntry& e : entries_) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

std::vector<ClassId> ClassCatalog::ids_with_role(ClassRole role) const {
  std::vector<ClassId> ids;
  for (const ClassEntry& e : entries_) {
    if (e.role == role) ids.push_back(e.id);
  }
  return ids;
}

bool ClassCatalog::fusion_capable() const {
  bool has_fg = false;
  bool has_bg = false;
  for (const ClassEntry& e : entries_) {
    (e.role == ClassRole::kForeground ? has_fg : has_bg) = true;
  }
  return has_fg && has_bg;
}

void ClassCatalog::require_fusion_capable() const {
  if (!fusion_capable()) {
    throw CatalogError("catalog '" + name_ +
                       "' needs at least one foreground and one background "
                       "class for this operation");
  }
}

ClassCatalog ClassCatalog::cityscapes19() {
  const ClassRole bg = ClassRole::kBackground;
  const ClassRole fg = ClassRole::kForeground;
  return ClassCatalog("cityscapes19",
                      {
                          {0, "road", bg},
                          {1, "sidewalk", bg},
                          {2, "building", bg},
                          {3, "wall", bg},
                          {4, "fence", bg},
                          {5, "pole", bg},
                          {6, "traffic light", fg},
                          {7, "traffic sign", fg},
                          {8, "vegetation", bg},
                          {9, "terrain", bg},
                          {10, "sky", bg},
                          {11, "person", fg},
                          {12, "rider", fg},
                          {13, "car", fg},
                          {14, "truck", fg},
                          {15, "bus", fg},
                          {16, "train", fg},
                          {17, "motorcycle", fg},
                          {18, "bicycle", fg},
                      },
                      255);
}

ClassCatalog ClassCatalog::camvid11() {
  const ClassRole bg = ClassRole::kBackground;
  const ClassRole fg = ClassRole::kForeground;
  return ClassCatalog("camvid11",
                      {
                          {0, "building", bg},
                          {1, "vegetation", bg},
                          {2, "sky", bg},
                          {3, "car", fg},
                          {4, "sign", fg},
                          {5, "road", bg},
                          {6, "pedestrian", fg},
                          {7, "fence", bg},
                          {8, "pole", bg},
                          {9, "sidewalk", bg},
                          {10, "cyclist", fg},
                      },
                      255);
}

}  // namespace segfuse

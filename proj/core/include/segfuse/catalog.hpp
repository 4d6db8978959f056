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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "segfuse/types.hpp"

namespace segfuse {

// Foreground classes ("things") have a defined shape and occur as
// instances; background classes ("stuff") are shapeless and identified by
// texture. The distinction drives fusion priority, pseudo-label masking,
// and the fg/bg sub-means of evaluation reports.
enum class ClassRole : std::uint8_t { kBackground, kForeground };

struct ClassEntry {
  ClassId id;
  std::string name;
  ClassRole role;

  bool operator==(const ClassEntry&) const = default;
};

/// The semantic class universe an image collection is labeled against.
/// Immutable after construction; construction validates uniqueness of ids
/// and that the ignore id collides with no class id.
class ClassCatalog {
 public:
  ClassCatalog(std::string name, std::vector<ClassEntry> entries,
               ClassId ignore_id);

  const std::string& name() const { return name_; }
  const std::vector<ClassEntry>& entries() const { return entries_; }
  ClassId ignore_id() const { return ignore_id_; }
  std::size_t size() const { return entries_.size(); }

  bool contains(ClassId id) const { return index_by_id_[id] >= 0; }

  /// Dense index of a class id (catalog order). Throws CatalogError for
  /// unknown ids.
  std::size_t index_of(ClassId id) const;

  const ClassEntry& entry_at(std::size_t index) const {
    return entries_[index];
  }
  const ClassEntry& entry_of(ClassId id) const {
    return entries_[index_of(id)];
  }

  ClassRole role_of(ClassId id) const { return entry_of(id).role; }
  bool is_foreground(ClassId id) const {
    return role_of(id) == ClassRole::kForeground;
  }

  std::optional<ClassId> id_of_name(std::string_view name) const;

  std::vector<ClassId> ids_with_role(ClassRole role) const;

  /// Fusion and simulation need at least one class of each role.
  bool fusion_capable() const;
  void require_fusion_capable() const;

  /// The 19 Cityscapes evaluation classes in train-id order
  /// (road=0 ... bicycle=18), ignore=255. Foreground subset: traffic
  /// light, traffic sign, person, rider, car, truck, bus, train,
  /// motorcycle, bicycle.
  static ClassCatalog cityscapes19();

  /// The 11-class CamVid benchmark subset, ignore=255.
  static ClassCatalog camvid11();

 private:
  std::string name_;
  std::vector<ClassEntry> entries_;
  ClassId ignore_id_;
  std::array<std::int16_t, 256> index_by_id_;  // -1 where unmapped
};

}  // namespace segfuse

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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/corruption.hpp"
#include "segfuse/instance_segment.hpp"
#include "segfuse/scene.hpp"
#include "segfuse/types.hpp"

namespace segfuse {

// Every declarative file is JSON with strict schema checking: unknown keys
// are rejected with the offending field path, so typos fail loudly instead
// of silently selecting defaults.

/// All detections of one image:
/// {image_id, width, height, segments: [{class_id, score, rle: [...]}]}.
struct SegmentManifest {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<InstanceSegment> segments;
};

SegmentManifest load_segment_manifest(const std::filesystem::path& path,
                                      const ClassCatalog& catalog);
void save_segment_manifest(const std::filesystem::path& path,
                           const SegmentManifest& manifest);

/// One dataset entry; paths are relative to the manifest root.
struct ManifestEntry {
  std::string image_id;
  std::optional<std::filesystem::path> gt;
  std::filesystem::path semantic;  // .png label map or .pvol volume
  std::optional<std::filesystem::path> segments;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::string catalog_name;
  std::vector<ManifestEntry> entries;
  /// Dataset-level GT instance totals per class name (simulated datasets
  /// record these; hand-written manifests may omit them).
  std::map<std::string, std::uint64_t> instance_totals;

  std::filesystem::path resolve(const std::filesystem::path& p) const {
    return root / p;
  }
};

/// Loads and validates: unique image ids, referenced files present.
DatasetManifest load_dataset_manifest(const std::filesystem::path& path);
void save_dataset_manifest(const std::filesystem::path& path,
                           const DatasetManifest& manifest);

/// Custom catalog file:
/// {name, ignore_id, classes: [{id, name, role: foreground|background}]}.
ClassCatalog load_catalog_file(const std::filesystem::path& path);

/// Resolves a --catalog argument: "cityscapes19", "camvid11", or
/// "custom:<path>".
ClassCatalog resolve_catalog(const std::string& selector);

SceneSpec load_scene_spec_file(const std::filesystem::path& path,
                               const ClassCatalog& catalog);
CorruptionSpec load_corruption_spec_file(const std::filesystem::path& path,
                                         const ClassCatalog& catalog);

/// Remap file: {"map": {"<source id>": <target id>, ...}}.
std::map<ClassId, ClassId> load_remap_file(const std::filesystem::path& path,
                                           const ClassCatalog& catalog);

/// Writes text through a temporary file plus rename.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace segfuse

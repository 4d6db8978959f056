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
#include <map>
#include <string>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/instance_segment.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

// Procedural urban-layout scenes with automatic instance annotation:
// horizontal background bands, parametric foreground silhouettes placed
// onto their band, later placements occluding earlier ones. Every instance
// receives a unique id and its post-occlusion visible mask, so ground
// truth comes for free. A handful of silhouette templates repeated with
// jittered scale and aspect covers wide pose variation, mirroring how few
// unique meshes can fill a large synthetic dataset.

struct ShapePart {
  enum class Kind { kRect, kDisc };
  Kind kind;
  // Center and extent in template-box coordinates (unit square).
  double cx, cy, w, h;
};

struct ShapeTemplate {
  std::string name;
  std::vector<ShapePart> parts;
};

/// Built-in silhouette templates addressable from scene specs:
/// rect, disc, vehicle, figure, lollipop, board, wheels.
const std::vector<ShapeTemplate>& shape_template_library();

/// Per-class placement and silhouette configuration.
struct ShapeSpec {
  std::vector<std::string> templates;  // sampled uniformly per instance
  double scale_min = 0.1;   // template-box height / image height
  double scale_max = 0.2;
  double aspect_min = 1.0;  // template-box width / height
  double aspect_max = 1.0;
  std::string band;         // background band the silhouette stands on
};

struct SceneBand {
  std::string class_name;  // background class of the governing catalog
  double fraction;         // of image height; fractions sum to 1
};

struct SceneSpec {
  int width = 256;
  int height = 128;
  std::vector<SceneBand> bands;
  std::map<std::string, int> instance_counts;  // foreground class -> count
  std::map<std::string, ShapeSpec> shapes;
  std::uint64_t seed = 0;
};

/// The bundled urban preset for the cityscapes19 catalog: sky / building /
/// road / sidewalk bands and all ten foreground classes.
SceneSpec default_scene_spec();

/// Throws SpecError (message carries the offending field path) when the
/// spec is inconsistent with itself or the catalog.
void validate_scene_spec(const SceneSpec& spec, const ClassCatalog& catalog);

struct SceneInstance {
  int id;  // 1..N, unique per scene
  InstanceSegment segment;  // post-occlusion visible mask, score 1
};

struct Scene {
  LabelMap gt;
  std::vector<SceneInstance> instances;
};

/// Deterministic in (spec, spec.seed): identical inputs give bit-identical
/// scenes on every platform.
Scene generate_scene(const SceneSpec& spec, const ClassCatalog& catalog);

}  // namespace segfuse

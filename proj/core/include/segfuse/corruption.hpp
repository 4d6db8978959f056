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
#include <span>
#include <string>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/instance_segment.hpp"
#include "segfuse/label_map.hpp"
#include "segfuse/prob_volume.hpp"
#include "segfuse/scene.hpp"

namespace segfuse {

// Corruption model standing in for the two trained networks. The semantic
// channel suffers texture-driven confusion on foreground objects (whole
// regions flip to a confusable class) while the instance channel keeps
// classes and shapes but misses, jitters, and hallucinates — the asymmetry
// that makes detection the reliable channel for foreground.

struct SemanticCorruption {
  /// Probability that a foreground object region flips wholesale to a
  /// confusable class.
  double fg_confusion = 0.0;
  /// Passes of random boundary erosion/dilation between regions.
  int boundary_jitter = 0;
  /// Per-pixel probability that a background pixel flips to another
  /// background class.
  double bg_noise = 0.0;
  /// Class name -> confusable class names. Empty selects the built-in
  /// table: car/truck/bus, bus/train, person/rider, motorcycle/bicycle,
  /// traffic light/traffic sign.
  std::map<std::string, std::vector<std::string>> confusions;
};

struct InstanceCorruption {
  /// Probability a GT instance yields no segment at all.
  double miss_rate = 0.0;
  /// Expected count of spurious (false) segments per image.
  double spurious_rate = 0.0;
  /// Surviving masks translate by a uniform offset in [-j, +j]^2 pixels.
  int mask_jitter = 0;
  /// Score = clamp(IoU(emitted mask, GT mask) + N(0, sigma), 0, 1).
  double score_sigma = 0.0;
};

struct CorruptionSpec {
  SemanticCorruption semantic;
  InstanceCorruption instance;
};

void validate_corruption_spec(const CorruptionSpec& spec,
                              const ClassCatalog& catalog);

/// Resolves the confusion table to class ids, with the built-in default
/// when the spec's table is empty. Classes without confusable partners in
/// the catalog never flip.
std::map<ClassId, std::vector<ClassId>> resolve_confusion_table(
    const SemanticCorruption& spec, const ClassCatalog& catalog);

/// Near-one-hot dense prediction of the corrupted labeling. With all rates
/// zero the argmax reproduces the ground truth exactly.
ProbVolume simulate_semantic(const LabelMap& gt,
                             std::span<const SceneInstance> instances,
                             const CorruptionSpec& spec,
                             const ClassCatalog& catalog, std::uint64_t seed);

/// Detection channel: drops, translates, re-scores, and hallucinates
/// segments. Surviving instances always keep their GT class.
std::vector<InstanceSegment> simulate_instances(
    std::span<const SceneInstance> instances, const CorruptionSpec& spec,
    const ClassCatalog& catalog, std::uint64_t seed);

}  // namespace segfuse

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
#include <optional>
#include <span>
#include <vector>

#include "segfuse/catalog.hpp"
#include "segfuse/instance_segment.hpp"
#include "segfuse/label_map.hpp"
#include "segfuse/prob_volume.hpp"

namespace segfuse {

// Detections have hard priority over the dense prediction: ranked instance
// segments are combined NMS-style (higher score claims overlapping pixels
// first), then every unclaimed pixel is filled from the semantic channel.

/// Knobs of the segment-combination step. Both thresholds default to
/// disabled: every segment and every non-overlapping segment region is
/// kept. Equal scores are processed in input order (stable).
struct FusionPolicy {
  /// When set, segments scoring below the threshold are skipped.
  std::optional<double> score_threshold;
  /// When set, a segment whose surviving pixels divided by its original
  /// pixel count fall below the threshold is dropped entirely.
  std::optional<double> min_remaining_fraction;
};

/// Foreground-only labeling with holes. Unclaimed pixels carry the ignore
/// id; every claimed pixel records which input segment won it.
class ForegroundMap {
 public:
  static constexpr std::int32_t kNoSegment = -1;

  ForegroundMap(LabelMap labels, std::vector<std::int32_t> provenance,
                ClassId ignore_id);

  const LabelMap& labels() const { return labels_; }
  std::span<const std::int32_t> provenance() const { return provenance_; }
  ClassId ignore_id() const { return ignore_id_; }

  bool is_hole(std::size_t i) const { return provenance_[i] == kNoSegment; }
  std::size_t hole_count() const { return hole_count_; }
  std::size_t claimed_count() const {
    return labels_.pixel_count() - hole_count_;
  }
  double hole_fraction() const;

 private:
  LabelMap labels_;
  std::vector<std::int32_t> provenance_;
  ClassId ignore_id_;
  std::size_t hole_count_;
};

/// Combines ranked segments into a foreground map. Segments are processed
/// in descending score (stable on ties); pixels already claimed by an
/// earlier segment are removed from later ones; retained regions are
/// pairwise disjoint. Zero-area segments are skipped. Throws
/// ClassRoleError for background-class segments and SizeError on
/// dimension mismatch.
ForegroundMap resolve_instances(std::span<const InstanceSegment> segments,
                                int width, int height,
                                const ClassCatalog& catalog,
                                const FusionPolicy& policy = {});

/// Copies claimed pixels verbatim and fills holes from the dense semantic
/// labeling, which may itself assign foreground classes there. `semantic`
/// must be ignore-free and of matching dimensions.
LabelMap fill_holes(const ForegroundMap& fg, const LabelMap& semantic);

struct FusionResult {
  LabelMap fused;
  ForegroundMap foreground;
};

/// resolve + fill in one step, keeping the foreground map for downstream
/// pseudo-labeling.
FusionResult fuse(std::span<const InstanceSegment> segments,
                  const LabelMap& semantic, const ClassCatalog& catalog,
                  const FusionPolicy& policy = {});

/// Overload reducing a probability volume with argmax_labels first.
FusionResult fuse(std::span<const InstanceSegment> segments,
                  const ProbVolume& semantic, const ClassCatalog& catalog,
                  const FusionPolicy& policy = {});

}  // namespace segfuse

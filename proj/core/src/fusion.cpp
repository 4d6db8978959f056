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

#include "segfuse/fusion.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "segfuse/errors.hpp"

namespace segfuse {

ForegroundMap::ForegroundMap(LabelMap labels,
                             std::vector<std::int32_t> provenance,
                             ClassId ignore_id)
    : labels_(std::move(labels)),
      provenance_(std::move(provenance)),
      ignore_id_(ignore_id),
      hole_count_(0) {
  if (provenance_.size() != labels_.pixel_count()) {
    throw SizeError("provenance has " + std::to_string(provenance_.size()) +
                    " entries for " + std::to_string(labels_.pixel_count()) +
                    " pixels");
  }
  for (std::size_t i = 0; i < provenance_.size(); ++i) {
    if (provenance_[i] == kNoSegment) {
      ++hole_count_;
      if (labels_[i] != ignore_id_) {
        throw CatalogError("hole pixel " + std::to_string(i) +
                           " does not carry the ignore id");
      }
    }
  }
}

double ForegroundMap::hole_fraction() const {
  if (labels_.pixel_count() == 0) return 0.0;
  return static_cast<double>(hole_count_) /
         static_cast<double>(labels_.pixel_count());
}

ForegroundMap resolve_instances(std::span<const InstanceSegment> segments,
                                int width, int height,
                                const ClassCatalog& catalog,
                                const FusionPolicy& policy) {
  for (const InstanceSegment& s : segments) {
    validate_segment(s, catalog, width, height);
  }

  // Descending score; stable keeps input-manifest order on equal scores.
  std::vector<std::size_t> order(segments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return segments[a].score > segments[b].score;
  });

  const std::size_t pixels =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<ClassId> labels(pixels, catalog.ignore_id());
  std::vector<std::int32_t> provenance(pixels, ForegroundMap::kNoSegment);
  std::vector<std::uint8_t> claimed(pixels, 0);

  std::vector<std::size_t> surviving;
  for (const std::size_t idx : order) {
    const InstanceSegment& seg = segments[idx];
    if (seg.mask.empty()) continue;  // zero-area, nothing to claim
    if (policy.score_threshold && seg.score < *policy.score_threshold) {
      continue;
    }

    surviving.clear();
    seg.mask.for_each_set([&](int x, int y) {
      const std::size_t p = static_cast<std::size_t>(y) * width + x;
      if (!claimed[p]) surviving.push_back(p);
    });

    if (policy.min_remaining_fraction) {
      const double fraction = static_cast<double>(surviving.size()) /
                              static_cast<double>(seg.mask.area());
      if (fraction < *policy.min_remaining_fraction) continue;
    }

    for (const std::size_t p : surviving) {
      claimed[p] = 1;
      labels[p] = seg.class_id;
      provenance[p] = static_cast<std::int32_t>(idx);
    }
  }

  return ForegroundMap(LabelMap(width, height, std::move(labels)),
                       std::move(provenance), catalog.ignore_id());
}

LabelMap fill_holes(const ForegroundMap& fg, const LabelMap& semantic) {
  if (!fg.labels().same_size(semantic)) {
    throw SizeError("foreground map is " + std::to_string(fg.labels().width()) +
                    "x" + std::to_string(fg.labels().height()) +
                    " but the semantic map is " +
                    std::to_string(semantic.width()) + "x" +
                    std::to_string(semantic.height()));
  }
  if (semantic.contains_value(fg.ignore_id())) {
    throw CatalogError("semantic hole-filling source contains ignore pixels");
  }
  const std::size_t pixels = semantic.pixel_count();
  std::vector<ClassId> fused(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    fused[i] = fg.is_hole(i) ? semantic[i] : fg.labels()[i];
  }
  return LabelMap(semantic.width(), semantic.height(), std::move(fused));
}

FusionResult fuse(std::span<const InstanceSegment> segments,
                  const LabelMap& semantic, const ClassCatalog& catalog,
                  const FusionPolicy& policy) {
  catalog.require_fusion_capable();
  ForegroundMap fg = resolve_instances(segments, semantic.width(),
                                       semantic.height(), catalog, policy);
  LabelMap fused = fill_holes(fg, semantic);
  return FusionResult{std::move(fused), std::move(fg)};
}

FusionResult fuse(std::span<const InstanceSegment> segments,
                  const ProbVolume& semantic, const ClassCatalog& catalog,
                  const FusionPolicy& policy) {
  return fuse(segments, argmax_labels(semantic, catalog), catalog, policy);
}

}  // namespace segfuse

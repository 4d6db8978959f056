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

#include "segfuse/binary_mask.hpp"
#include "segfuse/catalog.hpp"
#include "segfuse/types.hpp"

namespace segfuse {

/// One detected object: binary mask, foreground class, confidence score.
/// Scores are opaque ordering keys in [0, 1]; no calibration is assumed.
struct InstanceSegment {
  BinaryMask mask;
  ClassId class_id;
  double score;
};

/// Checks a segment against the catalog (foreground role, score range) and
/// the expected image dimensions. Throws ClassRoleError / SizeError /
/// CatalogError.
void validate_segment(const InstanceSegment& segment,
                      const ClassCatalog& catalog, int width, int height);

}  // namespace segfuse

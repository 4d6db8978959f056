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

#include "segfuse/instance_segment.hpp"

#include <string>

#include "segfuse/errors.hpp"

namespace segfuse {

void validate_segment(const InstanceSegment& segment,
                      const ClassCatalog& catalog, int width, int height) {
  if (segment.mask.width() != width || segment.mask.height() != height) {
    throw SizeError("segment mask is " + std::to_string(segment.mask.width()) +
                    "x" + std::to_string(segment.mask.height()) +
                    " but the image is " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  if (!catalog.contains(segment.class_id)) {
    throw CatalogError("segment class id " +
                       std::to_string(int{segment.class_id}) +
                       " is not part of catalog '" + catalog.name() + "'");
  }
  if (!catalog.is_foreground(segment.class_id)) {
    throw ClassRoleError("segment class '" +
                         catalog.entry_of(segment.class_id).name +
                         "' is a background class; detections carry "
                         "foreground classes only");
  }
  if (!(segment.score >= 0.0 && segment.score <= 1.0)) {
    throw CodecError("segment score " + std::to_string(segment.score) +
                     " is outside [0, 1]");
  }
}

}  // namespace segfuse

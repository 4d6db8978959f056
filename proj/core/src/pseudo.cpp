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

#include "segfuse/pseudo.hpp"

#include <string>
#include <utility>
#include <vector>

#include "segfuse/errors.hpp"

namespace segfuse {

LabelMap make_pseudo_gt(const ForegroundMap& fg, const LabelMap& semantic,
                        const ClassCatalog& catalog) {
  catalog.require_fusion_capable();
  if (!fg.labels().same_size(semantic)) {
    throw SizeError("foreground map is " + std::to_string(fg.labels().width()) +
                    "x" + std::to_string(fg.labels().height()) +
                    " but the semantic map is " +
                    std::to_string(semantic.width()) + "x" +
                    std::to_string(semantic.height()));
  }
  if (semantic.contains_value(catalog.ignore_id())) {
    throw CatalogError("semantic hole-filling source contains ignore pixels");
  }
  const std::size_t pixels = semantic.pixel_count();
  std::vector<ClassId> out(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    if (!fg.is_hole(i)) {
      out[i] = fg.labels()[i];
    } else if (catalog.is_foreground(semantic[i])) {
      out[i] = catalog.ignore_id();
    } else {
      out[i] = semantic[i];
    }
  }
  return LabelMap(semantic.width(), semantic.height(), std::move(out));
}

PseudoStats pseudo_stats(const ForegroundMap& fg, const LabelMap& pseudo_gt,
                         const ClassCatalog& catalog) {
  if (!fg.labels().same_size(pseudo_gt)) {
    throw SizeError("foreground map and pseudo-GT dimensions differ");
  }
  PseudoStats stats;
  for (std::size_t i = 0; i < pseudo_gt.pixel_count(); ++i) {
    if (!fg.is_hole(i)) {
      ++stats.fg_assigned;
    } else if (pseudo_gt[i] == catalog.ignore_id()) {
      ++stats.ignored;
    } else {
      ++stats.bg_filled;
    }
  }
  return stats;
}

}  // namespace segfuse

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

#include <cstddef>

#include "segfuse/catalog.hpp"
#include "segfuse/fusion.hpp"
#include "segfuse/label_map.hpp"

namespace segfuse {

// Pseudo ground truth for self-training: detection-claimed pixels keep
// their class, holes filled with a background prediction keep it, and
// holes where the dense prediction says foreground become ignore — a
// standard segmentation network's foreground output is not trusted enough
// to train on.

/// Builds the pseudo-GT map. Dimensions must match; `semantic` must be
/// ignore-free.
LabelMap make_pseudo_gt(const ForegroundMap& fg, const LabelMap& semantic,
                        const ClassCatalog& catalog);

/// Pixel accounting of a pseudo-GT map against the foreground map it was
/// built from. fg_assigned + bg_filled + ignored always equals the pixel
/// count.
struct PseudoStats {
  std::size_t fg_assigned = 0;
  std::size_t bg_filled = 0;
  std::size_t ignored = 0;

  std::size_t total() const { return fg_assigned + bg_filled + ignored; }
  double ignore_fraction() const {
    return total() == 0 ? 0.0
                        : static_cast<double>(ignored) /
                              static_cast<double>(total());
  }
  double fg_fraction() const {
    return total() == 0 ? 0.0
                        : static_cast<double>(fg_assigned) /
                              static_cast<double>(total());
  }
};

PseudoStats pseudo_stats(const ForegroundMap& fg, const LabelMap& pseudo_gt,
                         const ClassCatalog& catalog);

}  // namespace segfuse

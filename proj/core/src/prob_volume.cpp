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

#include "segfuse/prob_volume.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {
constexpr double kSumTolerance = 1e-6;
}

ProbVolume::ProbVolume(int width, int height, int channels,
                       std::vector<float> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  if (width_ < 0 || height_ < 0 || channels_ <= 0) {
    throw SizeError("probability volume dimensions must be positive");
  }
  const std::size_t expected = static_cast<std::size_t>(width_) * height_ *
                               static_cast<std::size_t>(channels_);
  if (data_.size() != expected) {
    throw SizeError("probability volume has " + std::to_string(data_.size()) +
                    " values, expected " + std::to_string(expected));
  }
  const std::size_t pixels = pixel_count();
  for (std::size_t i = 0; i < pixels; ++i) {
    double sum = 0.0;
    const float* p = data_.data() + i * channels_;
    for (int c = 0; c < channels_; ++c) {
      if (p[c] < 0.0f) {
        throw CodecError("pixel " + std::to_string(i) +
                         " carries a negative probability");
      }
      sum += p[c];
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw CodecError("pixel " + std::to_string(i) +
                       " probabilities sum to " + std::to_string(sum));
    }
  }
}

LabelMap argmax_labels(const ProbVolume& probs, const ClassCatalog& catalog) {
  if (static_cast<std::size_t>(probs.channels()) != catalog.size()) {
    throw CatalogError("probability volume has " +
                       std::to_string(probs.channels()) +
                       " channels but catalog '" + catalog.name() + "' has " +
                       std::to_string(catalog.size()) + " classes");
  }
  const std::size_t pixels = probs.pixel_count();
  std::vector<ClassId> labels(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    const std::span<const float> p = probs.pixel(i);
    float best = p[0];
    ClassId best_id = catalog.entry_at(0).id;
    for (int c = 1; c < probs.channels(); ++c) {
      const ClassId id = catalog.entry_at(static_cast<std::size_t>(c)).id;
      // Strictly-greater keeps the lowest class id on exact ties only when
      // channels are scanned in increasing-id order, which the bundled
      // catalogs satisfy; a second comparison covers arbitrary orderings.
      if (p[c] > best || (p[c] == best && id < best_id)) {
        best = p[c];
        best_id = id;
      }
    }
    labels[i] = best_id;
  }
  return LabelMap(probs.width(), probs.height(), std::move(labels));
}

}  // namespace segfuse

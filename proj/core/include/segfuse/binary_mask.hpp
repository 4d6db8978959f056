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
#include <cstdint>
#include <span>
#include <vector>

namespace segfuse {

// Run-length-encoded binary mask.
//
// Runs count pixels in column-major order and alternate zeros-run /
// ones-run, starting with the zeros-run. Only the leading zeros-run may be
// empty. This is the uncompressed-RLE convention of common instance-mask
// manifests, so exported segment files can be consumed elsewhere verbatim.
class BinaryMask {
 public:
  /// Takes ownership of validated runs. Throws CodecError when the runs do
  /// not sum to width*height or contain a zero interior run.
  BinaryMask(int width, int height, std::vector<std::uint32_t> runs);

  /// Encodes a column-major 0/1 pixel sequence. Throws SizeError when the
  /// sequence length is not width*height.
  static BinaryMask from_pixels(int width, int height,
                                std::span<const std::uint8_t> column_major);

  /// Encodes from a pixel predicate, traversed column-major. `pred(x, y)`
  /// is called exactly once per pixel.
  template <typename Pred>
  static BinaryMask from_predicate(int width, int height, Pred&& pred) {
    std::vector<std::uint32_t> runs;
    runs.push_back(0);
    bool current = false;  // run parity; starts on the zeros-run
    for (int x = 0; x < width; ++x) {
      for (int y = 0; y < height; ++y) {
        const bool bit = static_cast<bool>(pred(x, y));
        if (bit == current) {
          ++runs.back();
        } else {
          runs.push_back(1);
          current = bit;
        }
      }
    }
    return BinaryMask(width, height, std::move(runs));
  }

  /// Decodes back to the column-major 0/1 pixel sequence.
  std::vector<std::uint8_t> to_pixels() const;

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint32_t>& runs() const { return runs_; }

  /// Number of set pixels.
  std::size_t area() const { return area_; }
  bool empty() const { return area_ == 0; }

  /// Calls `fn(x, y)` for every set pixel, columns outermost.
  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    std::size_t pos = 0;
    for (std::size_t r = 0; r < runs_.size(); ++r) {
      if (r % 2 == 1) {
        for (std::size_t i = pos; i < pos + runs_[r]; ++i) {
          fn(static_cast<int>(i) / height_, static_cast<int>(i) % height_);
        }
      }
      pos += runs_[r];
    }
  }

  /// New mask translated by (dx, dy); pixels shifted outside the canvas are
  /// dropped.
  BinaryMask translated(int dx, int dy) const;

  bool operator==(const BinaryMask& other) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint32_t> runs_;
  std::size_t area_;
};

/// Spec-facing aliases of the codec pair.
BinaryMask rle_encode(std::span<const std::uint8_t> column_major_pixels,
                      int width, int height);
std::vector<std::uint8_t> rle_decode(const BinaryMask& mask);

}  // namespace segfuse

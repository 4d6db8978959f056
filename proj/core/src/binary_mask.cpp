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

#include "segfuse/binary_mask.hpp"

#include <string>
#include <utility>

#include "segfuse/errors.hpp"

namespace segfuse {

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint32_t> runs)
    : width_(width), height_(height), runs_(std::move(runs)), area_(0) {
  if (width_ < 0 || height_ < 0) {
    throw SizeError("mask dimensions must be non-negative");
  }
  const std::size_t expected =
      static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  std::size_t total = 0;
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    if (runs_[r] == 0 && r != 0) {
      throw CodecError("RLE runs contain a zero interior run at position " +
                       std::to_string(r));
    }
    total += runs_[r];
    if (r % 2 == 1) area_ += runs_[r];
  }
  if (total != expected) {
    throw CodecError("RLE runs sum to " + std::to_string(total) +
                     ", expected " + std::to_string(expected));
  }
}

BinaryMask BinaryMask::from_pixels(int width, int height,
                                   std::span<const std::uint8_t> column_major) {
  const std::size_t expected =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (column_major.size() != expected) {
    throw SizeError("pixel sequence has " + std::to_string(column_major.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  return from_predicate(width, height, [&](int x, int y) {
    return column_major[static_cast<std::size_t>(x) * height + y] != 0;
  });
}

std::vector<std::uint8_t> BinaryMask::to_pixels() const {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width_) * height_);
  std::size_t pos = 0;
  for (std::size_t r = 0; r < runs_.size(); ++r) {
    if (r % 2 == 1) {
      for (std::size_t i = pos; i < pos + runs_[r]; ++i) pixels[i] = 1;
    }
    pos += runs_[r];
  }
  return pixels;
}

BinaryMask BinaryMask::translated(int dx, int dy) const {
  const std::vector<std::uint8_t> src = to_pixels();
  return from_predicate(width_, height_, [&](int x, int y) {
    const int sx = x - dx;
    const int sy = y - dy;
    if (sx < 0 || sx >= width_ || sy < 0 || sy >= height_) return false;
    return src[static_cast<std::size_t>(sx) * height_ + sy] != 0;
  });
}

BinaryMask rle_encode(std::span<const std::uint8_t> column_major_pixels,
                      int width, int height) {
  return BinaryMask::from_pixels(width, height, column_major_pixels);
}

std::vector<std::uint8_t> rle_decode(const BinaryMask& mask) {
  return mask.to_pixels();
}

}  // namespace segfuse

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

#include "segfuse/io/pvol_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {

constexpr char kMagic[4] = {'P', 'V', 'O', 'L'};

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xFFu) << 24) | ((v & 0xFF00u) << 8) | ((v >> 8) & 0xFF00u) |
           (v >> 24);
  }
  return v;
}

void swap_floats_if_big_endian(std::vector<float>& data) {
  if constexpr (std::endian::native == std::endian::big) {
    for (float& f : data) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      bits = to_le(bits);
      std::memcpy(&f, &bits, 4);
    }
  }
}

}  // namespace

ProbVolume read_prob_volume(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  char magic[4];
  std::uint32_t dims[3];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(dims), 12);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw CodecError("'" + path.string() + "' lacks the PVOL header");
  }
  const std::uint32_t width = to_le(dims[0]);
  const std::uint32_t height = to_le(dims[1]);
  const std::uint32_t channels = to_le(dims[2]);

  const std::size_t count =
      static_cast<std::size_t>(width) * height * channels;
  std::vector<float> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (!in) {
    throw CodecError("'" + path.string() + "' is truncated: expected " +
                     std::to_string(count) + " float values");
  }
  in.get();
  if (!in.eof()) {
    throw CodecError("'" + path.string() + "' carries trailing bytes");
  }
  swap_floats_if_big_endian(data);
  return ProbVolume(static_cast<int>(width), static_cast<int>(height),
                    static_cast<int>(channels), std::move(data));
}

void write_prob_volume(const std::filesystem::path& path,
                       const ProbVolume& volume) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");

    const std::uint32_t dims[3] = {
        to_le(static_cast<std::uint32_t>(volume.width())),
        to_le(static_cast<std::uint32_t>(volume.height())),
        to_le(static_cast<std::uint32_t>(volume.channels()))};
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(dims), 12);

    std::vector<float> data(volume.data().begin(), volume.data().end());
    swap_floats_if_big_endian(data);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(float)));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace segfuse

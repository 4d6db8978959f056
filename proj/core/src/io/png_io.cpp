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

#include "segfuse/io/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <vector>

#include "segfuse/errors.hpp"

namespace segfuse {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_to_exception(png_structp, png_const_charp msg) {
  throw IoError(std::string("libpng: ") + msg);
}

void png_warning_silencer(png_structp, png_const_charp) {}

}  // namespace

LabelMap read_label_png(const std::filesystem::path& path) {
  FileHandle file(std::fopen(path.c_str(), "rb"));
  if (!file) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }

  png_structp png = png_create_read_struct(
      PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception,
      png_warning_silencer);
  if (png == nullptr) throw IoError("libpng: read struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: info struct allocation failed");
  }

  try {
    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8 || color_type != PNG_COLOR_TYPE_GRAY) {
      throw CodecError("'" + path.string() +
                       "' is not an 8-bit single-channel PNG label map");
    }
    if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
      throw CodecError("'" + path.string() + "' is interlaced; unsupported");
    }

    std::vector<ClassId> data(static_cast<std::size_t>(width) * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 y = 0; y < height; ++y) {
      rows[y] = data.data() + static_cast<std::size_t>(y) * width;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return LabelMap(static_cast<int>(width), static_cast<int>(height),
                    std::move(data));
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
}

void write_label_png(const std::filesystem::path& path, const LabelMap& map) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    FileHandle file(std::fopen(tmp.c_str(), "wb"));
    if (!file) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }

    png_structp png = png_create_write_struct(
        PNG_LIBPNG_VER_STRING, nullptr, png_error_to_exception,
        png_warning_silencer);
    if (png == nullptr) throw IoError("libpng: write struct allocation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
      png_destroy_write_struct(&png, nullptr);
      throw IoError("libpng: info struct allocation failed");
    }

    try {
      png_init_io(png, file.get());
      png_set_IHDR(png, info, static_cast<png_uint_32>(map.width()),
                   static_cast<png_uint_32>(map.height()), 8,
                   PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                   PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
      png_write_info(png, info);
      for (int y = 0; y < map.height(); ++y) {
        png_write_row(png, const_cast<png_bytep>(
                               map.data().data() +
                               static_cast<std::size_t>(y) * map.width()));
      }
      png_write_end(png, nullptr);
      png_destroy_write_struct(&png, &info);
    } catch (...) {
      png_destroy_write_struct(&png, &info);
      throw;
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace segfuse

// Copyright 2026 The tactile-sim Authors
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

#include <png.h>

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "tactile/render/image.hpp"
#include "tactile/util/errors.hpp"

namespace tactile::render {
namespace {

constexpr char kDepthMagic[8] = {'T', 'A', 'C', 'T', 'D', 'E', 'P', '1'};

void put_u32(char* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint32_t get_u32(const char* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  return v;
}

}  // namespace

void write_png(const std::string& path, const ByteImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  switch (image.channels) {
    case 1: png.format = PNG_FORMAT_GRAY; break;
    case 3: png.format = PNG_FORMAT_RGB; break;
    case 4: png.format = PNG_FORMAT_RGBA; break;
    default: throw std::invalid_argument("write_png: unsupported channel count");
  }
  std::vector<std::uint8_t> interleaved(image.data.size());
  const std::size_t plane = image.plane_size();
  for (std::size_t p = 0; p < plane; ++p)
    for (int c = 0; c < image.channels; ++c)
      interleaved[p * image.channels + c] = image.data[c * plane + p];
  if (!png_image_write_to_file(&png, path.c_str(), 0, interleaved.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw IoError("write_png " + path + ": " + msg);
  }
}

ByteImage read_png(const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str()))
    throw IoError("read_png " + path + ": " + png.message);
  int channels = 1;
  if (png.format & PNG_FORMAT_FLAG_COLOR) {
    channels = (png.format & PNG_FORMAT_FLAG_ALPHA) ? 4 : 3;
  } else if (png.format & PNG_FORMAT_FLAG_ALPHA) {
    channels = 1;
  }
  png.format = channels == 1 ? PNG_FORMAT_GRAY : channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> interleaved(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, interleaved.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw IoError("read_png " + path + ": " + msg);
  }
  ByteImage out(static_cast<int>(png.width), static_cast<int>(png.height), channels);
  const std::size_t plane = out.plane_size();
  for (std::size_t p = 0; p < plane; ++p)
    for (int c = 0; c < channels; ++c) out.data[c * plane + p] = interleaved[p * channels + c];
  return out;
}

void write_depth(const std::string& path, const DepthImage& depth) {
  if (depth.channels != 1) throw std::invalid_argument("write_depth: expected one channel");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("write_depth: cannot open " + path);
  char header[16];
  std::memcpy(header, kDepthMagic, 8);
  put_u32(header + 8, static_cast<std::uint32_t>(depth.width));
  put_u32(header + 12, static_cast<std::uint32_t>(depth.height));
  f.write(header, 16);
  f.write(reinterpret_cast<const char*>(depth.data.data()),
          static_cast<std::streamsize>(depth.data.size() * sizeof(float)));
  if (!f) throw IoError("write_depth: write failed for " + path);
}

DepthImage read_depth(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_depth: cannot open " + path);
  char header[16];
  if (!f.read(header, 16) || std::memcmp(header, kDepthMagic, 8) != 0)
    throw IoError("read_depth: bad header in " + path);
  DepthImage out(static_cast<int>(get_u32(header + 8)), static_cast<int>(get_u32(header + 12)));
  if (!f.read(reinterpret_cast<char*>(out.data.data()),
              static_cast<std::streamsize>(out.data.size() * sizeof(float))))
    throw IoError("read_depth: truncated " + path);
  return out;
}

}  // namespace tactile::render

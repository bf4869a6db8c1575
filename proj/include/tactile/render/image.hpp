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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tactile::render {

// Planar (channel-major) image; row 0 is the top row.
template <class T>
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<T> data;

  Image() = default;
  Image(int w, int h, int c = 1, T fill = T{})
      : width(w), height(h), channels(c), data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::size_t plane_size() const { return static_cast<std::size_t>(width) * height; }
  T& at(int c, int row, int col) { return data[c * plane_size() + static_cast<std::size_t>(row) * width + col]; }
  const T& at(int c, int row, int col) const {
    return data[c * plane_size() + static_cast<std::size_t>(row) * width + col];
  }
  T& at(int row, int col) { return at(0, row, col); }
  const T& at(int row, int col) const { return at(0, row, col); }
  T* plane(int c) { return data.data() + c * plane_size(); }
  const T* plane(int c) const { return data.data() + c * plane_size(); }

  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  bool operator==(const Image& o) const = default;
};

using DepthImage = Image<float>;
using ByteImage = Image<std::uint8_t>;
using TactileImage = ByteImage;
using RgbImage = ByteImage;

// 8-bit PNG with 1 (gray), 3 (RGB) or 4 (RGBA) channels.
void write_png(const std::string& path, const ByteImage& image);
ByteImage read_png(const std::string& path);

// Float depth: 8-byte magic "TACTDEP1", uint32 width, uint32 height
// (little-endian), then width*height float32 values row-major.
void write_depth(const std::string& path, const DepthImage& depth);
DepthImage read_depth(const std::string& path);

// Quarter turn counter-clockwise: out(i, j) = in(j, n - 1 - i). Square only.
template <class T>
Image<T> rotate90(const Image<T>& in) {
  Image<T> out(in.width, in.height, in.channels);
  const int n = in.width;
  for (int c = 0; c < in.channels; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(c, i, j) = in.at(c, j, n - 1 - i);
  return out;
}

}  // namespace tactile::render

// Copyright 2026 The Longtail Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LONGTAIL_COMPOSITOR_IMAGE_HPP_
#define LONGTAIL_COMPOSITOR_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace longtail {

// 8-bit RGB, row-major, interleaved.
struct Image {
  static constexpr int kChannels = 3;

  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int h, int w, std::uint8_t fill = 0);

  std::uint8_t* px(int y, int x) {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * kChannels;
  }
  const std::uint8_t* px(int y, int x) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * kChannels;
  }

  bool operator==(const Image&) const = default;
};

// Any PNG color type is converted to 8-bit RGB (alpha dropped).
Image decode_png(std::string_view bytes);
std::string encode_png(const Image& image);

Image read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace longtail

#endif  // LONGTAIL_COMPOSITOR_IMAGE_HPP_

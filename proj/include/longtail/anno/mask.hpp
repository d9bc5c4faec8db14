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

#ifndef LONGTAIL_ANNO_MASK_HPP_
#define LONGTAIL_ANNO_MASK_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace longtail {

// Axis-aligned box in pixel units, COCO convention (x, y, width, height).
struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  bool operator==(const Box&) const = default;
};

// Dense mask, one byte (0 or 1) per pixel, row-major.
struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int h, int w);

  bool at(int y, int x) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int y, int x, bool on) {
    bits[static_cast<std::size_t>(y) * width + x] = on ? 1 : 0;
  }
  std::size_t pixel_count() const { return bits.size(); }

  // Number of foreground pixels.
  std::int64_t area() const;
  bool empty() const { return area() == 0; }

  bool operator==(const BinaryMask&) const = default;
};

// Run-length mask in COCO layout: column-major runs that alternate
// background/foreground, starting with a (possibly empty) background run.
struct RleMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint32_t> counts;

  std::int64_t area() const;
  bool operator==(const RleMask&) const = default;
};

RleMask rle_encode(const BinaryMask& mask);

// Throws CodecError when the runs do not sum to height * width.
BinaryMask rle_decode(const RleMask& rle);

// COCO compressed counts string (LEB128-like, 6 bits per char, deltas
// against the run two positions back).
std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts);
std::vector<std::uint32_t> rle_counts_from_string(std::string_view s);

// Parses and validates the run sum in one step.
RleMask rle_from_string(std::string_view s, int height, int width);

// Tight box around the foreground; all zeros for an empty mask.
Box mask_bbox(const BinaryMask& mask);
Box rle_bbox(const RleMask& rle);

// |a & b| computed directly on the runs. Extents must agree.
std::int64_t rle_intersection_area(const RleMask& a, const RleMask& b);

// Mirror about the vertical axis (x -> width - 1 - x).
BinaryMask hflip(const BinaryMask& mask);

// Nearest-neighbour resampling with pixel-centre alignment:
// source index = floor((dst + 0.5) * src_extent / dst_extent).
BinaryMask resize_nearest(const BinaryMask& mask, int height, int width);

// Shared index map for every nearest-neighbour resize in the library.
inline int nearest_source_index(int dst, int src_extent, int dst_extent) {
  const auto v = static_cast<long long>(
      (static_cast<double>(dst) + 0.5) * src_extent / dst_extent);
  return static_cast<int>(v < src_extent ? v : src_extent - 1);
}

}  // namespace longtail

#endif  // LONGTAIL_ANNO_MASK_HPP_

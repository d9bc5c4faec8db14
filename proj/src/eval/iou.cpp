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

#include "longtail/eval/iou.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "longtail/common/error.hpp"

namespace longtail {

double mask_iou(const BinaryMask& a, const BinaryMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw ShapeError("mask extents differ");
  }
  std::int64_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    inter += a.bits[i] & b.bits[i];
    uni += a.bits[i] | b.bits[i];
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double rle_iou(const RleMask& a, const RleMask& b) {
  const std::int64_t inter = rle_intersection_area(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// For each position, distance to the nearest `false` in `line`, where the
// positions -1 and n also count as false.
void distance_to_false(const std::vector<std::uint8_t>& line, std::vector<int>& out) {
  const int n = static_cast<int>(line.size());
  out.resize(line.size());
  int last = -1;
  for (int i = 0; i < n; ++i) {
    if (!line[i]) last = i;
    out[i] = i - last;
  }
  last = n;
  for (int i = n - 1; i >= 0; --i) {
    if (!line[i]) last = i;
    out[i] = std::min(out[i], last - i);
  }
}

}  // namespace

BinaryMask mask_boundary(const BinaryMask& m, int d) {
  if (d < 1) throw ConfigError("boundary width must be at least 1");
  const int h = m.height, w = m.width;
  // near[y][x]: some pixel of column x within rows [y-d, y+d] is background
  // (or off-image).
  std::vector<std::uint8_t> near(static_cast<std::size_t>(h) * w, 0);
  std::vector<std::uint8_t> line;
  std::vector<int> dist;
  line.resize(static_cast<std::size_t>(h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) line[y] = m.bits[static_cast<std::size_t>(y) * w + x];
    distance_to_false(line, dist);
    for (int y = 0; y < h; ++y) near[static_cast<std::size_t>(y) * w + x] = dist[y] <= d;
  }
  BinaryMask out(h, w);
  line.resize(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) {
    // Row of "not near background"; distance to its nearest false is the
    // distance to a column whose window holds background.
    for (int x = 0; x < w; ++x) line[x] = !near[static_cast<std::size_t>(y) * w + x];
    distance_to_false(line, dist);
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      out.bits[i] = (m.bits[i] && dist[x] <= d) ? 1 : 0;
    }
  }
  return out;
}

int boundary_dilation_pixels(int height, int width, double frac) {
  const double diag = std::sqrt(static_cast<double>(height) * height +
                                static_cast<double>(width) * width);
  return std::max(1, static_cast<int>(std::ceil(frac * diag)));
}

double boundary_iou(const BinaryMask& a, const BinaryMask& b, double dilation_frac) {
  if (a.height != b.height || a.width != b.width) {
    throw ShapeError("mask extents differ");
  }
  const int d = boundary_dilation_pixels(a.height, a.width, dilation_frac);
  return mask_iou(mask_boundary(a, d), mask_boundary(b, d));
}

}  // namespace longtail

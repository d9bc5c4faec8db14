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

#include "longtail/anno/raster.hpp"

#include <algorithm>
#include <cmath>

#include "longtail/common/error.hpp"

namespace longtail {

namespace {

// Crossing abscissa of edge (a, b) with the horizontal line y = py. Same
// expression as point_in_polygon so both paths agree bit-for-bit.
inline double crossing_x(const Point& a, const Point& b, double py) {
  return (b.x - a.x) * (py - a.y) / (b.y - a.y) + a.x;
}

inline int clamp_index(double v, int extent) {
  return static_cast<int>(std::clamp(v, 0.0, static_cast<double>(extent - 1)));
}

void fill_polygon(const Polygon& poly, BinaryMask& out) {
  double ymin = poly[0].y, ymax = poly[0].y;
  for (const auto& p : poly) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int row0 = clamp_index(std::floor(ymin - 0.5), out.height);
  const int row1 = clamp_index(std::ceil(ymax - 0.5), out.height);
  std::vector<double> xs;
  const std::size_t n = poly.size();
  for (int y = row0; y <= row1; ++y) {
    const double py = y + 0.5;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point& a = poly[i];
      const Point& b = poly[j];
      if ((a.y > py) != (b.y > py)) xs.push_back(crossing_x(a, b, py));
    }
    if (xs.empty()) continue;
    std::sort(xs.begin(), xs.end());
    // Pixel centre px is inside iff an odd number of crossings satisfy
    // px < x_cross. Walk pixels left to right, dropping crossings <= px.
    const int col0 = clamp_index(std::floor(xs.front() - 0.5), out.width);
    const int col1 = clamp_index(std::ceil(xs.back() + 0.5), out.width);
    std::size_t k = 0;
    for (int x = col0; x <= col1; ++x) {
      const double px = x + 0.5;
      while (k < xs.size() && !(px < xs[k])) ++k;
      if ((xs.size() - k) % 2 == 1) out.set(y, x, true);
    }
  }
}

}  // namespace

bool point_in_polygon(const Polygon& polygon, double px, double py) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    if (((a.y > py) != (b.y > py)) && (px < crossing_x(a, b, py))) {
      inside = !inside;
    }
  }
  return inside;
}

BinaryMask polygons_to_mask(std::span<const Polygon> polygons, int height,
                            int width) {
  for (const auto& poly : polygons) {
    if (poly.size() < 3) {
      throw ValidationError("polygon with " + std::to_string(poly.size()) +
                            " vertices (need at least 3)");
    }
    for (const auto& p : poly) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw ValidationError("non-finite polygon vertex");
      }
    }
  }
  BinaryMask out(height, width);
  if (height == 0 || width == 0) return out;
  for (const auto& poly : polygons) fill_polygon(poly, out);
  return out;
}

}  // namespace longtail

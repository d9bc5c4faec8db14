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

#ifndef LONGTAIL_ANNO_RASTER_HPP_
#define LONGTAIL_ANNO_RASTER_HPP_

#include <span>
#include <vector>

#include "longtail/anno/mask.hpp"

namespace longtail {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

using Polygon = std::vector<Point>;

// Pixel (x, y) is foreground iff its centre (x + 0.5, y + 0.5) lies inside
// at least one polygon under the even-odd rule. Vertices may fall outside
// the image; only in-bounds pixels are produced. Throws ValidationError for
// a polygon with fewer than 3 vertices.
BinaryMask polygons_to_mask(std::span<const Polygon> polygons, int height,
                            int width);

// Even-odd crossing test (the rule the scanline rasterizer reproduces).
bool point_in_polygon(const Polygon& polygon, double px, double py);

}  // namespace longtail

#endif  // LONGTAIL_ANNO_RASTER_HPP_

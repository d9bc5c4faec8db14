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

#ifndef LONGTAIL_COMPOSITOR_MOSAIC_HPP_
#define LONGTAIL_COMPOSITOR_MOSAIC_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "longtail/common/random.hpp"
#include "longtail/compositor/sample.hpp"

namespace longtail {

inline constexpr std::uint8_t kMosaicPadValue = 114;

struct MosaicParams {
  double apply_prob = 0.5;
  int base_width = 400;
  int base_height = 400;
  int short_side_min = 640;
  int short_side_max = 1400;
  double min_box_area = 4.0;

  bool operator==(const MosaicParams&) const = default;
};

void validate_mosaic_params(const MosaicParams& params);

// Named short-side ranges: "400-1400" and "640-1400".
MosaicParams mosaic_preset(std::string_view name);

// Canvas rectangle [x0, x1) x [y0, y1) showing input `quadrant`, which was
// resized to resized_w x resized_h and anchored at (offset_x, offset_y).
struct MosaicPlacement {
  int quadrant = 0;
  int resized_w = 0;
  int resized_h = 0;
  int offset_x = 0;
  int offset_y = 0;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

struct MosaicResult {
  Sample sample;
  int center_x = 0;
  int center_y = 0;
  std::array<MosaicPlacement, 4> placements;
  int dropped = 0;
};

// Inputs fill the top-left, top-right, bottom-left and bottom-right
// quadrants in that order, each touching the centre point.
MosaicResult mosaic(const std::vector<Sample>& samples, const MosaicParams& params,
                    std::uint64_t seed);

using SampleSource = std::function<Sample()>;

struct StreamOutput {
  Sample sample;
  bool mosaicked = false;
};

// With probability apply_prob stitches the next four samples of the source,
// otherwise passes the next sample through unchanged.
class MosaicStream {
 public:
  MosaicStream(SampleSource source, MosaicParams params, std::uint64_t seed);

  StreamOutput next();

 private:
  SampleSource source_;
  MosaicParams params_;
  std::uint64_t seed_;
  Rng rng_;
  std::uint64_t emitted_ = 0;
};

}  // namespace longtail

#endif  // LONGTAIL_COMPOSITOR_MOSAIC_HPP_

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

#include "longtail/compositor/mosaic.hpp"

#include <algorithm>
#include <cmath>

#include "longtail/common/error.hpp"

namespace longtail {

void validate_mosaic_params(const MosaicParams& params) {
  if (!(params.apply_prob >= 0.0 && params.apply_prob <= 1.0)) {
    throw ConfigError("apply_prob must lie in [0, 1]");
  }
  if (params.base_width < 1 || params.base_height < 1) {
    throw ConfigError("mosaic base size must be positive");
  }
  if (params.short_side_min < 1 || params.short_side_min >= params.short_side_max) {
    throw ConfigError("short side range needs 0 < min < max");
  }
  if (!(params.min_box_area >= 0.0)) throw ConfigError("min_box_area must be >= 0");
}

MosaicParams mosaic_preset(std::string_view name) {
  MosaicParams p;
  if (name == "400-1400") {
    p.short_side_min = 400;
  } else if (name == "640-1400") {
    p.short_side_min = 640;
  } else {
    throw UsageError("unknown mosaic preset '" + std::string(name) + "'");
  }
  p.short_side_max = 1400;
  return p;
}

MosaicResult mosaic(const std::vector<Sample>& samples, const MosaicParams& params,
                    std::uint64_t seed) {
  if (samples.size() != 4) {
    throw ArityError("mosaic needs exactly 4 samples, got " + std::to_string(samples.size()));
  }
  validate_mosaic_params(params);
  for (const auto& s : samples) {
    if (s.image.height < 1 || s.image.width < 1) throw ShapeError("empty mosaic input");
  }
  const int W = params.base_width, H = params.base_height;
  const int cw = 2 * W, ch = 2 * H;
  Rng rng(seed);
  MosaicResult res;
  res.center_x = static_cast<int>(rng.uniform_int(W / 2, (3 * W) / 2));
  res.center_y = static_cast<int>(rng.uniform_int(H / 2, (3 * H) / 2));
  const int cx = res.center_x, cy = res.center_y;

  Sample& out = res.sample;
  out.image_id = samples[0].image_id;
  out.image = Image(ch, cw, kMosaicPadValue);
  std::int64_t next_id = 1;
  for (int q = 0; q < 4; ++q) {
    const Sample& in = samples[static_cast<std::size_t>(q)];
    const int sh = in.image.height, sw = in.image.width;
    const auto target = static_cast<double>(rng.uniform_int(params.short_side_min,
                                                            params.short_side_max));
    const double r = target / std::min(sh, sw);
    MosaicPlacement& pl = res.placements[static_cast<std::size_t>(q)];
    pl.quadrant = q;
    pl.resized_w = std::max(1, static_cast<int>(std::lround(sw * r)));
    pl.resized_h = std::max(1, static_cast<int>(std::lround(sh * r)));
    const bool left = q == 0 || q == 2, top = q == 0 || q == 1;
    pl.offset_x = left ? cx - pl.resized_w : cx;
    pl.offset_y = top ? cy - pl.resized_h : cy;
    pl.x0 = left ? std::max(0, pl.offset_x) : cx;
    pl.x1 = left ? cx : std::min(cw, cx + pl.resized_w);
    pl.y0 = top ? std::max(0, pl.offset_y) : cy;
    pl.y1 = top ? cy : std::min(ch, cy + pl.resized_h);

    std::vector<int> src_x(static_cast<std::size_t>(pl.x1 - pl.x0));
    std::vector<int> src_y(static_cast<std::size_t>(pl.y1 - pl.y0));
    for (int x = pl.x0; x < pl.x1; ++x) {
      src_x[x - pl.x0] = nearest_source_index(x - pl.offset_x, sw, pl.resized_w);
    }
    for (int y = pl.y0; y < pl.y1; ++y) {
      src_y[y - pl.y0] = nearest_source_index(y - pl.offset_y, sh, pl.resized_h);
    }
    for (int y = pl.y0; y < pl.y1; ++y) {
      for (int x = pl.x0; x < pl.x1; ++x) {
        std::copy_n(in.image.px(src_y[y - pl.y0], src_x[x - pl.x0]), Image::kChannels,
                    out.image.px(y, x));
      }
    }
    for (const auto& inst : in.instances) {
      Instance t;
      t.category_id = inst.category_id;
      t.mask = BinaryMask(ch, cw);
      for (int y = pl.y0; y < pl.y1; ++y) {
        for (int x = pl.x0; x < pl.x1; ++x) {
          if (inst.mask.at(src_y[y - pl.y0], src_x[x - pl.x0])) t.mask.set(y, x, true);
        }
      }
      refresh_geometry(t);
      if (t.area == 0.0 || t.bbox.area() < params.min_box_area) {
        ++res.dropped;
        continue;
      }
      t.id = next_id++;
      t.source = q;
      t.source_annotation_id = inst.id;
      out.instances.push_back(std::move(t));
    }
  }
  return res;
}

MosaicStream::MosaicStream(SampleSource source, MosaicParams params, std::uint64_t seed)
    : source_(std::move(source)), params_(params), seed_(seed), rng_(derive_seed(seed, 0)) {
  validate_mosaic_params(params_);
}

StreamOutput MosaicStream::next() {
  const std::uint64_t index = emitted_++;
  if (!rng_.bernoulli(params_.apply_prob)) return {source_(), false};
  std::vector<Sample> four;
  for (int i = 0; i < 4; ++i) four.push_back(source_());
  return {mosaic(four, params_, derive_seed(seed_, index + 1)).sample, true};
}

}  // namespace longtail

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

#ifndef LONGTAIL_TTA_TTA_HPP_
#define LONGTAIL_TTA_TTA_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "longtail/eval/detection.hpp"

namespace longtail {

// A test view: the image resized to exactly width x height, optionally
// mirrored left-right after resizing.
struct TtaView {
  int width = 0;
  int height = 0;
  bool hflip = false;

  bool operator==(const TtaView&) const = default;
};

struct FuseConfig {
  double nms_iou = 0.6;
  bool mask_vote = false;
  double vote_iou = 0.5;

  bool operator==(const FuseConfig&) const = default;
};

void validate_fuse_config(const FuseConfig& cfg);

// Four resolutions, each with and without flip.
std::vector<TtaView> default_views();

std::vector<TtaView> parse_views(std::string_view json_text);
std::string views_to_json(const std::vector<TtaView>& views);

// Original image -> view coordinates. Inverse of unmap up to resampling.
BinaryMask map_to_view(const BinaryMask& mask, const TtaView& view);

std::vector<Detection> unmap(std::vector<Detection> dets, const TtaView& view,
                             int orig_width, int orig_height);

double box_iou(const Box& a, const Box& b);

std::vector<Detection> fuse(const std::vector<std::vector<Detection>>& det_sets,
                            const FuseConfig& cfg);

}  // namespace longtail

#endif  // LONGTAIL_TTA_TTA_HPP_

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

#ifndef LONGTAIL_EVAL_DETECTION_HPP_
#define LONGTAIL_EVAL_DETECTION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longtail/anno/dataset.hpp"
#include "longtail/anno/mask.hpp"

namespace longtail {

// One predicted instance.
struct Detection {
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  double score = 0.0;
  RleMask mask;
  std::optional<double> iou_pred;

  bool operator==(const Detection&) const = default;
};

// Total rank order used everywhere detections are sorted: score
// descending, then image id, category id, mask runs and iou_pred ascending.
// Only fully identical detections compare equivalent, which makes every
// consumer independent of input order.
bool detection_rank_less(const Detection& a, const Detection& b);

// Results JSON: an array of
//   {image_id, category_id, score, segmentation: {size, counts}, iou_pred?}
// `counts` may be a compressed string or a run array. Throws ParseError
// (with byte offset) or ValidationError.
std::vector<Detection> parse_results(std::string_view json_text);

// Writes compressed-string RLE; iou_pred only when present.
std::string serialize_results(const std::vector<Detection>& dets);

// Throws ValidationError when a detection names an unknown image or
// category, or its mask extent differs from the image.
void validate_detections(const std::vector<Detection>& dets, const Dataset& gt);

}  // namespace longtail

#endif  // LONGTAIL_EVAL_DETECTION_HPP_

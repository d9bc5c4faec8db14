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

#include <unordered_map>

#include "longtail/common/error.hpp"
#include "longtail/eval/evaluate.hpp"
#include "longtail/eval/iou.hpp"

namespace longtail {

std::vector<Detection> rescore(std::vector<Detection> dets) {
  for (const auto& d : dets) {
    if (!d.iou_pred) throw ValidationError("rescore needs iou_pred on every detection");
  }
  for (auto& d : dets) d.score *= *d.iou_pred;
  return dets;
}

std::vector<double> calibration_oracle(const std::vector<Detection>& dets, const Dataset& gt) {
  std::unordered_map<std::size_t, BinaryMask> gt_masks;
  std::vector<double> out;
  out.reserve(dets.size());
  for (const auto& d : dets) {
    const auto& image = gt.image(d.image_id);
    const BinaryMask pred = rle_decode(d.mask);
    double best = 0.0;
    for (std::size_t idx : gt.annotations_of_image(d.image_id)) {
      const auto& ann = gt.annotations()[idx];
      if (ann.category_id != d.category_id) continue;
      auto it = gt_masks.find(idx);
      if (it == gt_masks.end()) {
        it = gt_masks.emplace(idx, decode_segmentation(ann.segmentation, image)).first;
      }
      best = std::max(best, mask_iou(pred, it->second));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace longtail

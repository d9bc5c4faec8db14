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

#include <algorithm>
#include <unordered_map>

#include "longtail/common/error.hpp"
#include "longtail/eval/evaluate.hpp"

namespace longtail {

std::vector<double> default_iou_thresholds() {
  std::vector<double> t(10);
  for (int i = 0; i < 10; ++i) t[i] = static_cast<double>(i) * (0.95 - 0.5) / 9.0 + 0.5;
  return t;
}

void validate_config(const EvalConfig& cfg) {
  if (cfg.iou_thresholds.empty()) throw ConfigError("no IoU thresholds");
  for (std::size_t i = 0; i < cfg.iou_thresholds.size(); ++i) {
    const double t = cfg.iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("IoU thresholds must lie in (0, 1]");
    if (i > 0 && t < cfg.iou_thresholds[i - 1]) {
      throw ConfigError("IoU thresholds must be sorted");
    }
  }
  if (cfg.max_per_img < 1 || cfg.max_per_class_dataset < 1) {
    throw ConfigError("detection caps must be at least 1");
  }
  if (!(cfg.boundary_dilation_frac > 0.0)) {
    throw ConfigError("boundary dilation fraction must be positive");
  }
}

namespace {

// Input must already be in rank order.
std::vector<Detection> keep_top_per_key(std::vector<Detection> ranked, int cap,
                                        std::int64_t Detection::*key) {
  std::unordered_map<std::int64_t, int> seen;
  std::vector<Detection> out;
  out.reserve(ranked.size());
  for (auto& d : ranked) {
    if (++seen[d.*key] <= cap) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::vector<Detection> apply_caps(std::vector<Detection> dets, const EvalConfig& cfg) {
  std::sort(dets.begin(), dets.end(), detection_rank_less);
  auto per_image = [&](std::vector<Detection> v) {
    return keep_top_per_key(std::move(v), cfg.max_per_img, &Detection::image_id);
  };
  auto per_class = [&](std::vector<Detection> v) {
    return cfg.fixed_ap
               ? keep_top_per_key(std::move(v), cfg.max_per_class_dataset, &Detection::category_id)
               : v;
  };
  if (cfg.cap_order == CapOrder::kPerImageFirst) return per_class(per_image(std::move(dets)));
  return per_image(per_class(std::move(dets)));
}

}  // namespace longtail

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

#ifndef LONGTAIL_EVAL_EVALUATE_HPP_
#define LONGTAIL_EVAL_EVALUATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "longtail/anno/dataset.hpp"
#include "longtail/eval/detection.hpp"

namespace longtail {

enum class MetricKind { kMaskIou, kBoundaryIou };

// Order in which the per-image and per-class (fixed AP) caps are applied.
enum class CapOrder { kPerImageFirst, kPerClassFirst };

inline constexpr int kDefaultMaxPerImage = 300;
inline constexpr int kDefaultMaxPerClassDataset = 10000;

// 0.50:0.05:0.95.
std::vector<double> default_iou_thresholds();

struct EvalConfig {
  std::vector<double> iou_thresholds = default_iou_thresholds();
  MetricKind metric = MetricKind::kMaskIou;
  double boundary_dilation_frac = 0.02;
  int max_per_img = kDefaultMaxPerImage;
  bool fixed_ap = false;
  int max_per_class_dataset = kDefaultMaxPerClassDataset;
  CapOrder cap_order = CapOrder::kPerImageFirst;

  bool operator==(const EvalConfig&) const = default;
};

// Thresholds sorted and in (0, 1], caps >= 1, dilation fraction > 0.
// Throws ConfigError.
void validate_config(const EvalConfig& cfg);

// Keeps the top max_per_img detections of each image and, with fixed_ap,
// the top max_per_class_dataset of each category over the whole set, in
// cfg.cap_order. The result is in rank order (detection_rank_less).
std::vector<Detection> apply_caps(std::vector<Detection> dets, const EvalConfig& cfg);

struct EvalReport {
  double ap = 0.0;  // percent
  std::optional<double> ap_r;
  std::optional<double> ap_c;
  std::optional<double> ap_f;
  std::map<std::int64_t, double> per_category_ap;  // percent
  EvalConfig config;
};

// COCO-style AP per category present in the ground truth: detections are
// capped, ranked, and matched greedily (highest IoU among unmatched GT of
// the same image and category, ties to the lower GT id, IoU >= threshold).
// The interpolated precision is sampled at 101 recall points and averaged
// over thresholds, then categories; bucket APs average their categories
// (nullopt for a bucket with no GT categories). Every image is treated as
// exhaustively annotated. Throws ValidationError for detections that do not
// resolve in `gt`.
EvalReport evaluate(const Dataset& gt, std::vector<Detection> dets, const EvalConfig& cfg);

std::string report_to_json(const EvalReport& report);

// score' = score * iou_pred. Throws ValidationError when iou_pred is missing.
std::vector<Detection> rescore(std::vector<Detection> dets);

// For each detection: best mask IoU against a same-category GT instance in
// its image, 0 when there is none.
std::vector<double> calibration_oracle(const std::vector<Detection>& dets, const Dataset& gt);

}  // namespace longtail

#endif  // LONGTAIL_EVAL_EVALUATE_HPP_

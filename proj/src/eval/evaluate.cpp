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

#include "longtail/eval/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "longtail/common/error.hpp"
#include "longtail/common/parallel.hpp"
#include "longtail/eval/iou.hpp"

namespace longtail {

namespace {

constexpr int kRecallPoints = 101;

// The mask the chosen metric compares: the instance itself, or its
// boundary band.
RleMask metric_mask(const BinaryMask& m, const EvalConfig& cfg) {
  if (cfg.metric == MetricKind::kMaskIou) return rle_encode(m);
  const int d = boundary_dilation_pixels(m.height, m.width, cfg.boundary_dilation_frac);
  return rle_encode(mask_boundary(m, d));
}

RleMask metric_mask(const RleMask& m, const EvalConfig& cfg) {
  if (cfg.metric == MetricKind::kMaskIou) return m;
  return metric_mask(rle_decode(m), cfg);
}

struct GtInstance {
  std::int64_t id;
  RleMask mask;
};

// 101-point interpolated AP of one ranked TP/FP sequence.
double average_precision(const std::vector<std::uint8_t>& is_tp, std::int64_t num_gt) {
  const std::size_t n = is_tp.size();
  std::vector<double> precision(n), recall(n);
  std::int64_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_tp[k]) {
      ++tp;
    } else {
      ++fp;
    }
    recall[k] = static_cast<double>(tp) / static_cast<double>(num_gt);
    precision[k] = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  for (std::size_t k = n; k-- > 1;) precision[k - 1] = std::max(precision[k - 1], precision[k]);
  double sum = 0.0;
  for (int r = 0; r < kRecallPoints; ++r) {
    const double threshold = static_cast<double>(r) / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), threshold);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / kRecallPoints;
}

// AP (fraction) of one category, averaged over IoU thresholds.
double evaluate_category(const Dataset& gt, const std::vector<std::size_t>& gt_indices,
                         const std::vector<const Detection*>& ranked, const EvalConfig& cfg) {
  std::unordered_map<std::int64_t, std::vector<GtInstance>> gt_by_image;
  for (std::size_t idx : gt_indices) {
    const auto& ann = gt.annotations()[idx];
    const auto& image = gt.image(ann.image_id);
    RleMask m = std::holds_alternative<RleMask>(ann.segmentation)
                    ? metric_mask(std::get<RleMask>(ann.segmentation), cfg)
                    : metric_mask(decode_segmentation(ann.segmentation, image), cfg);
    gt_by_image[ann.image_id].push_back({ann.id, std::move(m)});
  }
  for (auto& [_, v] : gt_by_image) {
    std::sort(v.begin(), v.end(),
              [](const GtInstance& a, const GtInstance& b) { return a.id < b.id; });
  }

  // ious[k][g]: detection k against GT g of the same image.
  std::vector<std::vector<double>> ious(ranked.size());
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    auto it = gt_by_image.find(ranked[k]->image_id);
    if (it == gt_by_image.end()) continue;
    const RleMask dm = metric_mask(ranked[k]->mask, cfg);
    for (const auto& g : it->second) ious[k].push_back(rle_iou(dm, g.mask));
  }

  const auto num_gt = static_cast<std::int64_t>(gt_indices.size());
  double total = 0.0;
  std::vector<std::uint8_t> is_tp(ranked.size());
  for (double threshold : cfg.iou_thresholds) {
    std::unordered_map<std::int64_t, std::vector<std::uint8_t>> matched;
    for (const auto& [image_id, v] : gt_by_image) matched[image_id].assign(v.size(), 0);
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      is_tp[k] = 0;
      if (ious[k].empty()) continue;
      auto& used = matched[ranked[k]->image_id];
      int best = -1;
      double best_iou = -1.0;
      for (std::size_t g = 0; g < ious[k].size(); ++g) {
        if (used[g] || ious[k][g] < threshold) continue;
        if (ious[k][g] > best_iou) {
          best_iou = ious[k][g];
          best = static_cast<int>(g);
        }
      }
      if (best >= 0) {
        used[static_cast<std::size_t>(best)] = 1;
        is_tp[k] = 1;
      }
    }
    total += average_precision(is_tp, num_gt);
  }
  return total / static_cast<double>(cfg.iou_thresholds.size());
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

EvalReport evaluate(const Dataset& gt, std::vector<Detection> dets, const EvalConfig& cfg) {
  validate_config(cfg);
  validate_detections(dets, gt);
  const std::vector<Detection> kept = apply_caps(std::move(dets), cfg);

  std::map<std::int64_t, std::vector<std::size_t>> gt_by_cat;
  for (std::size_t i = 0; i < gt.annotations().size(); ++i) {
    gt_by_cat[gt.annotations()[i].category_id].push_back(i);
  }
  std::unordered_map<std::int64_t, std::vector<const Detection*>> det_by_cat;
  for (const auto& d : kept) det_by_cat[d.category_id].push_back(&d);

  std::vector<std::int64_t> cats;
  for (const auto& [c, _] : gt_by_cat) cats.push_back(c);
  std::vector<double> cat_ap(cats.size(), 0.0);
  static const std::vector<const Detection*> kNone;
  parallel_for(cats.size(), [&](std::size_t k) {
    auto it = det_by_cat.find(cats[k]);
    const auto& ranked = it == det_by_cat.end() ? kNone : it->second;
    cat_ap[k] = 100.0 * evaluate_category(gt, gt_by_cat[cats[k]], ranked, cfg);
  });

  EvalReport report;
  report.config = cfg;
  std::vector<double> bucket_aps[kNumBuckets];
  for (std::size_t k = 0; k < cats.size(); ++k) {
    report.per_category_ap[cats[k]] = cat_ap[k];
    bucket_aps[static_cast<int>(gt.category(cats[k]).bucket)].push_back(cat_ap[k]);
  }
  report.ap = mean_of(cat_ap).value_or(0.0);
  report.ap_r = mean_of(bucket_aps[0]);
  report.ap_c = mean_of(bucket_aps[1]);
  report.ap_f = mean_of(bucket_aps[2]);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  using json = nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json per_cat = json::object();
  for (const auto& [c, ap] : report.per_category_ap) per_cat[std::to_string(c)] = ap;
  const auto& cfg = report.config;
  json j;
  j["AP"] = report.ap;
  j["APr"] = opt(report.ap_r);
  j["APc"] = opt(report.ap_c);
  j["APf"] = opt(report.ap_f);
  j["per_category"] = std::move(per_cat);
  j["config"] = {
      {"iou_thresholds", cfg.iou_thresholds},
      {"metric", cfg.metric == MetricKind::kMaskIou ? "mask" : "boundary"},
      {"boundary_dilation_frac", cfg.boundary_dilation_frac},
      {"max_per_img", cfg.max_per_img},
      {"fixed_ap", cfg.fixed_ap},
      {"max_per_class_dataset", cfg.max_per_class_dataset},
      {"cap_order", cfg.cap_order == CapOrder::kPerImageFirst ? "per_image_first"
                                                              : "per_class_first"}};
  return j.dump(2);
}

}  // namespace longtail

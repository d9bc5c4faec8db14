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

#include "longtail/eval/detection.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "longtail/common/error.hpp"

namespace longtail {

using json = nlohmann::json;

bool detection_rank_less(const Detection& a, const Detection& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.image_id != b.image_id) return a.image_id < b.image_id;
  if (a.category_id != b.category_id) return a.category_id < b.category_id;
  if (a.mask.height != b.mask.height) return a.mask.height < b.mask.height;
  if (a.mask.width != b.mask.width) return a.mask.width < b.mask.width;
  if (a.mask.counts != b.mask.counts) return a.mask.counts < b.mask.counts;
  return a.iou_pred < b.iou_pred;
}

namespace {

double unit_interval(const json& j, const char* field) {
  const double v = j.at(field).get<double>();
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(field) + " must lie in [0, 1]");
  }
  return v;
}

}  // namespace

std::vector<Detection> parse_results(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed results JSON: ") + e.what(), e.byte);
  }
  if (!root.is_array()) throw ValidationError("results JSON must be an array");
  std::vector<Detection> dets;
  dets.reserve(root.size());
  try {
    for (const auto& j : root) {
      Detection d;
      d.image_id = j.at("image_id").get<std::int64_t>();
      d.category_id = j.at("category_id").get<std::int64_t>();
      d.score = unit_interval(j, "score");
      const auto& seg = j.at("segmentation");
      const int h = seg.at("size").at(0).get<int>();
      const int w = seg.at("size").at(1).get<int>();
      const auto& counts = seg.at("counts");
      if (counts.is_string()) {
        d.mask = rle_from_string(counts.get_ref<const std::string&>(), h, w);
      } else {
        d.mask = RleMask{h, w, counts.get<std::vector<std::uint32_t>>()};
        rle_decode(d.mask);
      }
      if (j.contains("iou_pred") && !j["iou_pred"].is_null()) {
        d.iou_pred = unit_interval(j, "iou_pred");
      }
      dets.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad detection field: ") + e.what());
  }
  return dets;
}

std::string serialize_results(const std::vector<Detection>& dets) {
  json out = json::array();
  for (const auto& d : dets) {
    json j{{"image_id", d.image_id},
           {"category_id", d.category_id},
           {"score", d.score},
           {"segmentation",
            {{"size", {d.mask.height, d.mask.width}},
             {"counts", rle_counts_to_string(d.mask.counts)}}}};
    if (d.iou_pred) j["iou_pred"] = *d.iou_pred;
    out.push_back(std::move(j));
  }
  return out.dump();
}

void validate_detections(const std::vector<Detection>& dets, const Dataset& gt) {
  for (const auto& d : dets) {
    if (!gt.has_image(d.image_id)) {
      throw ValidationError("detection references unknown image_id " +
                            std::to_string(d.image_id));
    }
    if (!gt.has_category(d.category_id)) {
      throw ValidationError("detection references unknown category_id " +
                            std::to_string(d.category_id));
    }
    const auto& im = gt.image(d.image_id);
    if (d.mask.height != im.height || d.mask.width != im.width) {
      throw ValidationError("detection mask extent differs from image " +
                            std::to_string(d.image_id));
    }
    if (!std::isfinite(d.score)) throw ValidationError("non-finite detection score");
  }
}

}  // namespace longtail

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

#include "longtail/tta/tta.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <json.hpp>

#include "longtail/common/error.hpp"
#include "longtail/common/parallel.hpp"
#include "longtail/eval/iou.hpp"

namespace longtail {

using json = nlohmann::json;

void validate_fuse_config(const FuseConfig& cfg) {
  if (!(cfg.nms_iou > 0.0 && cfg.nms_iou <= 1.0)) throw ConfigError("nms_iou must lie in (0, 1]");
  if (!(cfg.vote_iou > 0.0 && cfg.vote_iou <= 1.0)) {
    throw ConfigError("vote_iou must lie in (0, 1]");
  }
}

std::vector<TtaView> default_views() {
  std::vector<TtaView> views;
  for (auto [w, h] : {std::pair{1600, 1000}, {1600, 1400}, {1800, 1200}, {1800, 1600}}) {
    views.push_back({w, h, false});
    views.push_back({w, h, true});
  }
  return views;
}

std::vector<TtaView> parse_views(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed views JSON: ") + e.what(), e.byte);
  }
  if (!root.is_array()) throw ValidationError("views JSON must be an array");
  std::vector<TtaView> views;
  try {
    for (const auto& j : root) {
      TtaView v{j.at("w").get<int>(), j.at("h").get<int>(), j.value("hflip", false)};
      if (v.width < 1 || v.height < 1) throw ValidationError("view dimensions must be positive");
      views.push_back(v);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad view entry: ") + e.what());
  }
  return views;
}

std::string views_to_json(const std::vector<TtaView>& views) {
  json out = json::array();
  for (const auto& v : views) out.push_back({{"w", v.width}, {"h", v.height}, {"hflip", v.hflip}});
  return out.dump();
}

BinaryMask map_to_view(const BinaryMask& mask, const TtaView& view) {
  BinaryMask out = resize_nearest(mask, view.height, view.width);
  return view.hflip ? hflip(out) : out;
}

std::vector<Detection> unmap(std::vector<Detection> dets, const TtaView& view,
                             int orig_width, int orig_height) {
  if (orig_width < 1 || orig_height < 1) throw ShapeError("original extent must be positive");
  for (const auto& d : dets) {
    if (d.mask.width != view.width || d.mask.height != view.height) {
      throw ShapeError("detection mask does not match the view extent");
    }
  }
  parallel_for(dets.size(), [&](std::size_t i) {
    BinaryMask m = rle_decode(dets[i].mask);
    if (view.hflip) m = hflip(m);
    dets[i].mask = rle_encode(resize_nearest(m, orig_height, orig_width));
  });
  return dets;
}

double box_iou(const Box& a, const Box& b) {
  const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni <= 0.0 ? 0.0 : inter / uni;
}

namespace {

RleMask vote(const Detection& keeper, const std::vector<const Detection*>& voters) {
  const BinaryMask base = rle_decode(keeper.mask);
  std::vector<double> weight(base.bits.size(), 0.0);
  double total = 0.0;
  for (const Detection* v : voters) {
    const BinaryMask m = rle_decode(v->mask);
    for (std::size_t p = 0; p < m.bits.size(); ++p) {
      if (m.bits[p]) weight[p] += v->score;
    }
    total += v->score;
  }
  if (!(total > 0.0)) return keeper.mask;
  BinaryMask out(base.height, base.width);
  for (std::size_t p = 0; p < out.bits.size(); ++p) out.bits[p] = weight[p] / total >= 0.5;
  return rle_encode(out);
}

// Greedy NMS over one (image, category) group already in rank order.
std::vector<Detection> fuse_group(const std::vector<const Detection*>& group,
                                  const FuseConfig& cfg) {
  const std::size_t n = group.size();
  std::vector<Box> boxes(n);
  for (std::size_t i = 0; i < n; ++i) boxes[i] = rle_bbox(group[i]->mask);
  // suppressor[j]: the kept detection that removed j, or j itself if kept.
  std::vector<std::size_t> suppressor(n, n);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (suppressor[i] != n) continue;
    suppressor[i] = i;
    kept.push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (suppressor[j] == n && box_iou(boxes[i], boxes[j]) > cfg.nms_iou) suppressor[j] = i;
    }
  }
  std::vector<Detection> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) {
    Detection d = *group[k];
    if (cfg.mask_vote) {
      std::vector<const Detection*> voters{group[k]};
      for (std::size_t j = k + 1; j < n; ++j) {
        if (suppressor[j] == k && rle_iou(group[j]->mask, group[k]->mask) >= cfg.vote_iou) {
          voters.push_back(group[j]);
        }
      }
      d.mask = vote(*group[k], voters);
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::vector<Detection> fuse(const std::vector<std::vector<Detection>>& det_sets,
                            const FuseConfig& cfg) {
  validate_fuse_config(cfg);
  std::vector<const Detection*> all;
  std::map<std::int64_t, std::pair<int, int>> extent;
  for (const auto& set : det_sets) {
    for (const auto& d : set) {
      auto [it, fresh] = extent.try_emplace(d.image_id, d.mask.height, d.mask.width);
      if (!fresh && it->second != std::pair{d.mask.height, d.mask.width}) {
        throw ValidationError("mixed mask extents for image " + std::to_string(d.image_id));
      }
      all.push_back(&d);
    }
  }
  std::sort(all.begin(), all.end(),
            [](const Detection* a, const Detection* b) { return detection_rank_less(*a, *b); });

  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<const Detection*>> groups;
  for (const Detection* d : all) groups[{d->image_id, d->category_id}].push_back(d);
  std::vector<const std::vector<const Detection*>*> order;
  for (const auto& [_, g] : groups) order.push_back(&g);

  std::vector<std::vector<Detection>> results(order.size());
  parallel_for(order.size(), [&](std::size_t i) { results[i] = fuse_group(*order[i], cfg); });

  std::vector<Detection> out;
  for (auto& r : results) {
    for (auto& d : r) out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), detection_rank_less);
  return out;
}

}  // namespace longtail

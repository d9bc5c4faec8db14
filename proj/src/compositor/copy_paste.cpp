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

#include "longtail/compositor/copy_paste.hpp"

#include <algorithm>
#include <cmath>

#include "longtail/common/error.hpp"
#include "longtail/common/random.hpp"

namespace longtail {

void validate_paste_params(const PasteParams& params) {
  if (params.n_instances < 0) throw ConfigError("n_instances must be non-negative");
  double total = 0.0;
  for (double w : params.bucket_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("bucket weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("bucket weights are all zero");
  if (!(params.scale_lo > 0.0 && params.scale_lo <= params.scale_hi) ||
      !std::isfinite(params.scale_hi)) {
    throw ConfigError("scale jitter needs 0 < lo <= hi");
  }
  if (!(params.hflip_prob >= 0.0 && params.hflip_prob <= 1.0)) {
    throw ConfigError("hflip_prob must lie in [0, 1]");
  }
  if (!(params.min_remaining_area_frac >= 0.0 && params.min_remaining_area_frac <= 1.0)) {
    throw ConfigError("min_remaining_area_frac must lie in [0, 1]");
  }
}

std::vector<std::int64_t> select_paste_instances(const Dataset& ds, const PasteParams& params,
                                                 std::uint64_t seed) {
  validate_paste_params(params);
  if (params.n_instances == 0) return {};
  std::array<std::vector<std::int64_t>, kNumBuckets> pool;
  for (const auto& ann : ds.annotations()) {
    pool[static_cast<int>(ds.category(ann.category_id).bucket)].push_back(ann.id);
  }
  std::array<double, kNumBuckets> weight{};
  double total = 0.0;
  for (int b = 0; b < kNumBuckets; ++b) {
    weight[b] = pool[b].empty() ? 0.0 : params.bucket_weights[b];
    total += weight[b];
  }
  if (!(total > 0.0)) throw SelectionError("every weighted bucket is empty");

  Rng rng(seed);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(params.n_instances));
  for (int i = 0; i < params.n_instances; ++i) {
    double u = rng.uniform01() * total;
    int b = -1;
    for (int c = 0; c < kNumBuckets; ++c) {
      if (weight[c] == 0.0) continue;
      b = c;  // rounding leftovers land in the last weighted bucket
      if (u < weight[c]) break;
      u -= weight[c];
    }
    const auto& v = pool[b];
    out.push_back(v[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))]);
  }
  return out;
}

CopyPasteResult copy_paste(const Sample& target, const std::vector<PasteSource>& sources,
                           const PasteParams& params, std::uint64_t seed) {
  validate_paste_params(params);
  CopyPasteResult res;
  res.sample = target;
  Sample& out = res.sample;
  const int H = out.image.height, W = out.image.width;
  std::vector<double> original_area;
  std::int64_t next_id = 1;
  for (const auto& inst : out.instances) {
    original_area.push_back(static_cast<double>(inst.mask.area()));
    next_id = std::max(next_id, inst.id + 1);
  }

  Rng rng(seed);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto& src = sources[k];
    if (src.sample == nullptr || src.instance >= src.sample->instances.size()) {
      throw IndexError("paste source " + std::to_string(k) + " does not name an instance");
    }
    const Sample& ss = *src.sample;
    const Instance& si = ss.instances[src.instance];
    const Box box = mask_bbox(si.mask);
    if (box.area() <= 0.0) {
      throw ValidationError("paste source annotation " + std::to_string(si.id) + " is empty");
    }
    const double scale = rng.uniform(params.scale_lo, params.scale_hi);
    const bool flip = rng.bernoulli(params.hflip_prob);
    const int bx = static_cast<int>(box.x), by = static_cast<int>(box.y);
    const int bw = static_cast<int>(box.w), bh = static_cast<int>(box.h);
    const auto pw = static_cast<int>(std::lround(bw * scale));
    const auto ph = static_cast<int>(std::lround(bh * scale));
    if (pw < 1 || ph < 1) {
      res.warnings.push_back("annotation " + std::to_string(si.id) +
                             " scaled below 1 px; skipped");
      continue;
    }
    const auto px = static_cast<int>(rng.uniform_int(std::min(0, W - pw), std::max(0, W - pw)));
    const auto py = static_cast<int>(rng.uniform_int(std::min(0, H - ph), std::max(0, H - ph)));

    BinaryMask pasted(H, W);
    bool any = false;
    for (int ty = std::max(0, py); ty < std::min(H, py + ph); ++ty) {
      const int sy = by + nearest_source_index(ty - py, bh, ph);
      for (int tx = std::max(0, px); tx < std::min(W, px + pw); ++tx) {
        int lx = tx - px;
        if (flip) lx = pw - 1 - lx;
        const int sx = bx + nearest_source_index(lx, bw, pw);
        if (!si.mask.at(sy, sx)) continue;
        pasted.set(ty, tx, true);
        std::copy_n(ss.image.px(sy, sx), Image::kChannels, out.image.px(ty, tx));
        any = true;
      }
    }
    if (!any) {
      res.warnings.push_back("annotation " + std::to_string(si.id) +
                             " has no visible pixels after placement; skipped");
      continue;
    }
    for (auto& inst : out.instances) {
      for (std::size_t p = 0; p < pasted.bits.size(); ++p) {
        if (pasted.bits[p]) inst.mask.bits[p] = 0;
      }
    }
    Instance inst;
    inst.id = next_id++;
    inst.category_id = si.category_id;
    inst.mask = std::move(pasted);
    inst.source = static_cast<int>(k);
    inst.source_annotation_id = si.id;
    original_area.push_back(static_cast<double>(inst.mask.area()));
    out.instances.push_back(std::move(inst));
    ++res.pasted;
  }

  std::vector<Instance> kept;
  for (std::size_t i = 0; i < out.instances.size(); ++i) {
    Instance& inst = out.instances[i];
    const double remaining = static_cast<double>(inst.mask.area());
    if (remaining == 0.0 || remaining < params.min_remaining_area_frac * original_area[i]) {
      ++res.dropped;
      continue;
    }
    refresh_geometry(inst);
    kept.push_back(std::move(inst));
  }
  out.instances = std::move(kept);
  return res;
}

}  // namespace longtail

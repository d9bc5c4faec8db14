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

#include "longtail/cli/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "longtail/anno/raster.hpp"
#include "longtail/common/error.hpp"
#include "longtail/common/random.hpp"

namespace longtail {

using json = nlohmann::json;

namespace {

constexpr int kEllipseVertices = 16;

std::string zero_padded(std::int64_t v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*lld", width, static_cast<long long>(v));
  return buf;
}

Polygon random_shape(Rng& rng, int w, int h) {
  if (rng.bernoulli(0.5)) {
    const double bw = static_cast<double>(rng.uniform_int(3, std::max(3, w / 2)));
    const double bh = static_cast<double>(rng.uniform_int(3, std::max(3, h / 2)));
    const double x = static_cast<double>(rng.uniform_int(0, static_cast<std::int64_t>(w - bw)));
    const double y = static_cast<double>(rng.uniform_int(0, static_cast<std::int64_t>(h - bh)));
    return {{x, y}, {x + bw, y}, {x + bw, y + bh}, {x, y + bh}};
  }
  const double rx = rng.uniform(2.5, std::max(2.5, w / 4.0));
  const double ry = rng.uniform(2.5, std::max(2.5, h / 4.0));
  const double cx = rng.uniform(rx, w - rx);
  const double cy = rng.uniform(ry, h - ry);
  Polygon poly;
  for (int i = 0; i < kEllipseVertices; ++i) {
    const double a = 2.0 * std::numbers::pi * i / kEllipseVertices;
    // Two decimals keep the JSON short; the raster is computed afterwards.
    poly.push_back({std::round((cx + rx * std::cos(a)) * 100.0) / 100.0,
                    std::round((cy + ry * std::sin(a)) * 100.0) / 100.0});
  }
  return poly;
}

}  // namespace

Fixture generate_fixture(const FixtureParams& params) {
  if (params.n_categories < 3) throw ConfigError("fixture needs at least 3 categories");
  if (params.n_images < 1) throw ConfigError("fixture needs at least 1 image");
  if (!(params.zipf_s >= 0.0) || !std::isfinite(params.zipf_s)) {
    throw ConfigError("zipf exponent must be >= 0");
  }
  Rng rng(params.seed);
  Fixture fx;
  json images = json::array(), categories = json::array(), annotations = json::array();
  std::vector<ImageRecord> image_recs;
  for (int i = 1; i <= params.n_images; ++i) {
    const int w = static_cast<int>(rng.uniform_int(48, 96));
    const int h = static_cast<int>(rng.uniform_int(40, 80));
    const std::string name = zero_padded(i, 6) + ".png";
    image_recs.push_back({i, w, h, name});
    images.push_back({{"id", i}, {"width", w}, {"height", h}, {"file_name", name}});
  }

  std::vector<std::int64_t> order(static_cast<std::size_t>(params.n_images));
  std::int64_t next_ann = 1;
  std::int64_t total_instances = 0;
  for (int k = 1; k <= params.n_categories; ++k) {
    const double ideal = params.n_images * std::pow(static_cast<double>(k), -params.zipf_s);
    const auto count =
        std::clamp<std::int64_t>(std::llround(ideal), 1, params.n_images);
    const Bucket bucket = bucket_for_image_count(count);
    fx.truth.image_counts.push_back(count);
    ++fx.truth.categories_per_bucket[static_cast<int>(bucket)];
    categories.push_back({{"id", k}, {"name", "cat_" + zero_padded(k, 4)}});

    // Partial Fisher-Yates: the first `count` entries are the chosen images.
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int64_t>(i) + 1;
    for (std::int64_t i = 0; i < count; ++i) {
      const auto j = rng.uniform_int(i, params.n_images - 1);
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<std::int64_t> chosen(order.begin(), order.begin() + count);
    std::sort(chosen.begin(), chosen.end());
    for (std::int64_t img : chosen) {
      const auto& rec = image_recs[static_cast<std::size_t>(img - 1)];
      const int n = static_cast<int>(rng.uniform_int(1, 3));
      for (int m = 0; m < n; ++m) {
        const Polygon poly = random_shape(rng, rec.width, rec.height);
        const BinaryMask mask = polygons_to_mask(std::vector<Polygon>{poly}, rec.height, rec.width);
        const Box box = mask_bbox(mask);
        json flat = json::array();
        for (const auto& p : poly) {
          flat.push_back(p.x);
          flat.push_back(p.y);
        }
        annotations.push_back({{"id", next_ann++},
                               {"image_id", img},
                               {"category_id", k},
                               {"segmentation", json::array({flat})},
                               {"bbox", {box.x, box.y, box.w, box.h}},
                               {"area", mask.area()}});
        ++fx.truth.instances_per_bucket[static_cast<int>(bucket)];
        ++total_instances;
      }
    }
  }
  for (int b = 0; b < kNumBuckets; ++b) {
    fx.truth.category_fraction[b] = static_cast<double>(fx.truth.categories_per_bucket[b]) /
                                    static_cast<double>(params.n_categories);
    fx.truth.instance_fraction[b] = static_cast<double>(fx.truth.instances_per_bucket[b]) /
                                    static_cast<double>(total_instances);
    if (fx.truth.categories_per_bucket[b] == 0) {
      fx.warnings.push_back("bucket " + std::string(bucket_name(static_cast<Bucket>(b))) +
                            " is empty");
    }
  }

  fx.annotations_json = json{{"images", std::move(images)},
                             {"categories", std::move(categories)},
                             {"annotations", std::move(annotations)}}
                            .dump();
  json side;
  side["params"] = {{"n_categories", params.n_categories},
                    {"zipf_s", params.zipf_s},
                    {"n_images", params.n_images},
                    {"seed", params.seed}};
  side["categories_per_bucket"] = fx.truth.categories_per_bucket;
  side["instances_per_bucket"] = fx.truth.instances_per_bucket;
  side["category_fraction"] = fx.truth.category_fraction;
  side["instance_fraction"] = fx.truth.instance_fraction;
  side["image_counts"] = fx.truth.image_counts;
  side["buckets"] = {"rare", "common", "frequent"};
  fx.sidecar_json = side.dump(2);
  return fx;
}

Image render_fixture_image(const Dataset& ds, std::int64_t image_id) {
  const auto& rec = ds.image(image_id);
  const std::uint64_t bg = mix64(static_cast<std::uint64_t>(image_id));
  Image img(rec.height, rec.width);
  for (int y = 0; y < rec.height; ++y) {
    for (int x = 0; x < rec.width; ++x) {
      std::uint8_t* p = img.px(y, x);
      p[0] = static_cast<std::uint8_t>(bg & 0x7F);
      p[1] = static_cast<std::uint8_t>((bg >> 8) & 0x7F);
      p[2] = static_cast<std::uint8_t>((bg >> 16) & 0x7F);
    }
  }
  for (std::size_t idx : ds.annotations_of_image(image_id)) {
    const auto& ann = ds.annotations()[idx];
    const std::uint64_t c = mix64(static_cast<std::uint64_t>(ann.category_id) + 0x51ULL);
    const BinaryMask m = decode_segmentation(ann.segmentation, rec);
    for (int y = 0; y < rec.height; ++y) {
      for (int x = 0; x < rec.width; ++x) {
        if (!m.at(y, x)) continue;
        std::uint8_t* p = img.px(y, x);
        p[0] = static_cast<std::uint8_t>(0x80 | (c & 0x7F));
        p[1] = static_cast<std::uint8_t>(0x80 | ((c >> 8) & 0x7F));
        p[2] = static_cast<std::uint8_t>(0x80 | ((c >> 16) & 0x7F));
      }
    }
  }
  return img;
}

}  // namespace longtail

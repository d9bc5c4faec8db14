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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "longtail/anno/stats.hpp"
#include "longtail/cli/fixture.hpp"
#include "longtail/common/error.hpp"
#include "longtail/compositor/copy_paste.hpp"
#include "longtail/compositor/image.hpp"
#include "longtail/compositor/mosaic.hpp"
#include "longtail/compositor/sample.hpp"
#include "support.hpp"

using namespace longtail;
using longtail::testing::rect_mask;

namespace {

// Pixel (y, x) of image `tag` holds (y, x, tag), so every output pixel
// names the source pixel it was copied from.
Image coordinate_image(int h, int w, std::uint8_t tag) {
  Image img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.px(y, x)[0] = static_cast<std::uint8_t>(y);
      img.px(y, x)[1] = static_cast<std::uint8_t>(x);
      img.px(y, x)[2] = tag;
    }
  }
  return img;
}

Instance make_instance(std::int64_t id, std::int64_t cat, BinaryMask m) {
  Instance inst;
  inst.id = id;
  inst.category_id = cat;
  inst.mask = std::move(m);
  inst.source_annotation_id = id;
  refresh_geometry(inst);
  return inst;
}

Sample coordinate_sample(std::mt19937_64& gen, int h, int w, std::uint8_t tag, int n_inst) {
  Sample s;
  s.image_id = tag;
  s.image = coordinate_image(h, w, tag);
  std::uniform_int_distribution<int> ux(0, w - 1), uy(0, h - 1);
  for (int i = 0; i < n_inst; ++i) {
    int x0 = ux(gen), x1 = ux(gen), y0 = uy(gen), y1 = uy(gen);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    BinaryMask m = rect_mask(h, w, x0, y0, x1 + 1, y1 + 1);
    // Knock out a random pixel pattern so masks are not plain boxes.
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x)
        if ((x * 7 + y * 3 + i) % 5 == 0) m.set(y, x, false);
    if (m.empty()) m.set(y0, x0, true);
    s.instances.push_back(make_instance(100 * tag + i, 1 + i % 3, std::move(m)));
  }
  return s;
}

// Fraction of instance pixels whose colour points back into the mask of the
// instance they claim to come from.
double provenance_fraction(const Instance& out, const Image& img, const Sample& src,
                           int expected_tag) {
  const Instance* orig = nullptr;
  for (const auto& i : src.instances)
    if (i.id == out.source_annotation_id) orig = &i;
  REQUIRE(orig != nullptr);
  std::int64_t good = 0, total = 0;
  for (int y = 0; y < out.mask.height; ++y) {
    for (int x = 0; x < out.mask.width; ++x) {
      if (!out.mask.at(y, x)) continue;
      ++total;
      const std::uint8_t* p = img.px(y, x);
      const int sy = p[0], sx = p[1];
      if (p[2] == expected_tag && sy < orig->mask.height && sx < orig->mask.width &&
          orig->mask.at(sy, sx)) {
        ++good;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(good) / static_cast<double>(total);
}

void check_geometry(const Sample& s) {
  for (const auto& inst : s.instances) {
    CHECK(inst.mask.height == s.image.height);
    CHECK(inst.mask.width == s.image.width);
    CHECK(inst.bbox.w > 0);
    CHECK(inst.bbox.h > 0);
    CHECK(inst.bbox == mask_bbox(inst.mask));
    CHECK(inst.area == static_cast<double>(inst.mask.area()));
  }
}

PasteParams fixed_paste(double scale, double flip) {
  PasteParams p;
  p.scale_lo = p.scale_hi = scale;
  p.hflip_prob = flip;
  return p;
}

Dataset zipf_dataset() {
  FixtureParams fp;
  fp.n_images = 300;
  fp.seed = 3;
  return parse_dataset(generate_fixture(fp).annotations_json);
}

}  // namespace

TEST_CASE("PNG round trip") {
  const Image img = coordinate_image(17, 23, 9);
  CHECK(decode_png(encode_png(img)) == img);
  const auto path = std::filesystem::temp_directory_path() / "longtail_png_test.png";
  write_png(path, img);
  CHECK(read_png(path) == img);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(decode_png("not a png"), CodecError);
  CHECK_THROWS_AS(read_png("/nonexistent/x.png"), ValidationError);
  CHECK_THROWS_AS(encode_png(Image(0, 0)), ShapeError);
}

TEST_CASE("make_sample decodes annotations and checks the extent") {
  const Dataset ds = testing::dataset_from_placements(2, {{1, {1}}, {2, {1, 2}}});
  const Sample s = make_sample(ds, 1, Image(16, 16));
  REQUIRE(s.instances.size() == 2);
  CHECK(s.instances[0].area == 4.0);
  CHECK_THROWS_AS(make_sample(ds, 1, Image(16, 15)), ValidationError);
  const Dataset back = sample_to_dataset(s, ds, "x.png");
  CHECK(back.annotations().size() == 2);
  CHECK(decode_segmentation(back.annotations()[0].segmentation, back.images()[0]) ==
        s.instances[0].mask);
}

TEST_CASE("select_paste_instances honours bucket weights") {
  const Dataset ds = zipf_dataset();
  const auto stats = category_stats(ds);
  REQUIRE(stats.categories_per_bucket[0] > 0);
  REQUIRE(stats.categories_per_bucket[1] > 0);
  REQUIRE(stats.categories_per_bucket[2] > 0);
  auto bucket_of = [&](std::int64_t ann_id) {
    for (const auto& a : ds.annotations())
      if (a.id == ann_id) return static_cast<int>(ds.category(a.category_id).bucket);
    return -1;
  };

  PasteParams rare_only;
  rare_only.n_instances = 500;
  rare_only.bucket_weights = {1.0, 0.0, 0.0};
  for (auto id : select_paste_instances(ds, rare_only, 1)) CHECK(bucket_of(id) == 0);

  PasteParams none;
  none.n_instances = 0;
  CHECK(select_paste_instances(ds, none, 1).empty());

  for (const std::array<double, 3> w : {std::array<double, 3>{1, 1, 1}, {3, 1, 0}}) {
    PasteParams p;
    p.n_instances = 100000;
    p.bucket_weights = w;
    std::unordered_map<std::int64_t, int> bucket;
    for (const auto& a : ds.annotations()) {
      bucket[a.id] = static_cast<int>(ds.category(a.category_id).bucket);
    }
    std::array<int, 3> hits{};
    for (auto id : select_paste_instances(ds, p, 2)) ++hits[bucket.at(id)];
    const double total = w[0] + w[1] + w[2];
    for (int b = 0; b < 3; ++b) {
      const double expect = w[b] / total;
      CHECK(std::abs(hits[b] / 1e5 - expect) <= 0.02 * expect);
    }
  }
  PasteParams p;
  CHECK(select_paste_instances(ds, p, 9) == select_paste_instances(ds, p, 9));
  CHECK(select_paste_instances(ds, p, 9) != select_paste_instances(ds, p, 10));
}

TEST_CASE("select_paste_instances errors") {
  const Dataset frequent_only = testing::dataset_from_placements(
      120, {{1, [] {
               std::vector<std::int64_t> v;
               for (int i = 1; i <= 120; ++i) v.push_back(i);
               return v;
             }()}});
  PasteParams p;
  p.bucket_weights = {1.0, 1.0, 0.0};
  CHECK_THROWS_AS(select_paste_instances(frequent_only, p, 1), SelectionError);
  p.bucket_weights = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(select_paste_instances(frequent_only, p, 1), ConfigError);
  p.bucket_weights = {-1.0, 1.0, 0.0};
  CHECK_THROWS_AS(select_paste_instances(frequent_only, p, 1), ConfigError);
}

TEST_CASE("copy_paste onto an empty target keeps exactly the pasted instances") {
  std::mt19937_64 gen(1);
  const Sample src = coordinate_sample(gen, 30, 40, 1, 4);
  Sample target;
  target.image = coordinate_image(50, 60, 0);
  std::vector<PasteSource> sources;
  for (std::size_t i = 0; i < src.instances.size(); ++i) sources.push_back({&src, i});
  PasteParams p = fixed_paste(1.0, 0.0);
  p.min_remaining_area_frac = 0.0;
  const auto res = copy_paste(target, sources, p, 5);
  CHECK(res.pasted == 4);
  CHECK(res.sample.instances.size() + res.dropped == 4);
  for (const auto& inst : res.sample.instances) CHECK(inst.source >= 0);
}

TEST_CASE("copy_paste drops a fully covered instance") {
  Sample target;
  target.image = Image(10, 10, 50);
  target.instances.push_back(make_instance(1, 1, rect_mask(10, 10, 0, 0, 10, 10)));
  Sample src;
  src.image = Image(20, 20, 200);
  src.instances.push_back(make_instance(7, 2, rect_mask(20, 20, 5, 5, 15, 15)));
  const auto res = copy_paste(target, {{&src, 0}}, fixed_paste(1.0, 0.0), 3);
  REQUIRE(res.sample.instances.size() == 1);
  CHECK(res.sample.instances[0].category_id == 2);
  CHECK(res.sample.instances[0].area == 100.0);
  CHECK(res.dropped == 1);
  CHECK(res.sample.image == Image(10, 10, 200));
}

TEST_CASE("copy_paste keeps a partly covered instance above the threshold") {
  Sample target;
  target.image = Image(10, 20, 50);
  target.instances.push_back(make_instance(1, 1, rect_mask(10, 20, 0, 0, 20, 10)));
  Sample src;
  src.image = Image(10, 10, 200);
  src.instances.push_back(make_instance(7, 2, rect_mask(10, 10, 0, 0, 10, 10)));
  const auto res = copy_paste(target, {{&src, 0}}, fixed_paste(1.0, 0.0), 3);
  REQUIRE(res.sample.instances.size() == 2);
  CHECK(res.sample.instances[0].area == 100.0);
  CHECK(res.sample.instances[1].area == 100.0);
  CHECK(rle_intersection_area(rle_encode(res.sample.instances[0].mask),
                              rle_encode(res.sample.instances[1].mask)) == 0);
}

TEST_CASE("copy_paste with certain flip pastes the mirrored source mask") {
  // L-shaped source; the target has the crop's extent so placement is fixed.
  BinaryMask l(8, 8);
  for (int y = 1; y < 7; ++y) l.set(y, 2, true);
  for (int x = 2; x < 6; ++x) l.set(6, x, true);
  Sample src;
  src.image = coordinate_image(8, 8, 1);
  src.instances.push_back(make_instance(3, 1, l));
  Sample target;
  target.image = Image(6, 4, 0);
  const auto res = copy_paste(target, {{&src, 0}}, fixed_paste(1.0, 1.0), 11);
  REQUIRE(res.sample.instances.size() == 1);
  BinaryMask crop(6, 4);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 4; ++x) crop.set(y, x, l.at(y + 1, x + 2));
  CHECK(res.sample.instances[0].mask == hflip(crop));
  CHECK(res.sample.instances[0].mask != crop);
}

TEST_CASE("copy_paste skips instances scaled below one pixel") {
  Sample src;
  src.image = Image(5, 5);
  src.instances.push_back(make_instance(3, 1, rect_mask(5, 5, 2, 2, 3, 3)));
  Sample target;
  target.image = Image(5, 5);
  const auto res = copy_paste(target, {{&src, 0}}, fixed_paste(0.3, 0.0), 1);
  CHECK(res.pasted == 0);
  CHECK(res.sample.instances.empty());
  REQUIRE(res.warnings.size() == 1);
  CHECK(res.warnings[0].find("annotation 3") != std::string::npos);
  CHECK_THROWS_AS(copy_paste(target, {{&src, 4}}, fixed_paste(1.0, 0.0), 1), IndexError);
}

TEST_CASE("copy_paste consistency, count identity and determinism") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 60; ++trial) {
    const Sample target = coordinate_sample(gen, 40, 50, 0, 5);
    std::vector<Sample> srcs;
    for (int s = 0; s < 3; ++s) srcs.push_back(coordinate_sample(gen, 30 + s * 10, 35, 1 + s, 3));
    std::vector<PasteSource> sources;
    std::vector<const Sample*> inputs;
    for (std::size_t s = 0; s < srcs.size(); ++s) {
      for (std::size_t i = 0; i < srcs[s].instances.size(); i += 2) {
        sources.push_back({&srcs[s], i});
        inputs.push_back(&srcs[s]);
      }
    }
    PasteParams p;
    p.min_remaining_area_frac = 0.1 * (trial % 4);
    const auto res = copy_paste(target, sources, p, static_cast<std::uint64_t>(trial));
    const Sample& out = res.sample;
    check_geometry(out);

    int surviving_target = 0, surviving_pasted = 0;
    for (const auto& inst : out.instances) {
      if (inst.source < 0) {
        ++surviving_target;
        CHECK(provenance_fraction(inst, out.image, target, 0) == 1.0);
      } else {
        ++surviving_pasted;
        const Sample* from = inputs[static_cast<std::size_t>(inst.source)];
        CHECK(provenance_fraction(inst, out.image, *from, static_cast<int>(from->image_id)) >=
              0.98);
      }
    }
    CHECK(static_cast<int>(out.instances.size()) == surviving_target + surviving_pasted);
    CHECK(static_cast<int>(target.instances.size()) + res.pasted - res.dropped ==
          static_cast<int>(out.instances.size()));

    // Later pastes stay whole: no pixel is claimed by a pasted instance and
    // any other instance.
    for (std::size_t i = 0; i < out.instances.size(); ++i) {
      if (out.instances[i].source < 0) continue;
      for (std::size_t j = 0; j < out.instances.size(); ++j) {
        if (i == j) continue;
        CHECK(rle_intersection_area(rle_encode(out.instances[i].mask),
                                    rle_encode(out.instances[j].mask)) == 0);
      }
    }
    const auto again = copy_paste(target, sources, p, static_cast<std::uint64_t>(trial));
    CHECK(again.sample == out);
  }
}

TEST_CASE("mosaic arity and parameters") {
  std::vector<Sample> three(3);
  for (auto& s : three) s.image = Image(4, 4);
  CHECK_THROWS_AS(mosaic(three, MosaicParams{}, 1), ArityError);
  three.resize(5, three[0]);
  CHECK_THROWS_AS(mosaic(three, MosaicParams{}, 1), ArityError);
  MosaicParams bad;
  bad.short_side_min = bad.short_side_max;
  three.resize(4);
  CHECK_THROWS_AS(mosaic(three, bad, 1), ConfigError);
  CHECK(mosaic_preset("400-1400").short_side_min == 400);
  CHECK(mosaic_preset("640-1400").short_side_min == 640);
  CHECK(mosaic_preset("640-1400").short_side_max == 1400);
  CHECK_THROWS_AS(mosaic_preset("tiny"), UsageError);
}

TEST_CASE("mosaic of identical solid images is that colour everywhere") {
  std::vector<Sample> four(4);
  for (auto& s : four) s.image = Image(30, 50, 77);
  MosaicParams p;
  p.base_width = p.base_height = 40;
  p.short_side_min = 64;
  p.short_side_max = 140;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto res = mosaic(four, p, seed);
    CHECK(res.sample.image == Image(80, 80, 77));
    CHECK(res.sample.instances.empty());
  }
  // Shipped defaults also cover the canvas.
  const auto res = mosaic(four, MosaicParams{}, 3);
  CHECK(res.sample.image == Image(800, 800, 77));
}

TEST_CASE("mosaic pads uncovered canvas") {
  std::vector<Sample> four(4);
  for (auto& s : four) s.image = Image(10, 10, 1);
  MosaicParams p;
  p.base_width = p.base_height = 40;
  p.short_side_min = 4;
  p.short_side_max = 8;
  const auto res = mosaic(four, p, 2);
  CHECK(res.sample.image.px(0, 0)[0] == kMosaicPadValue);
  CHECK(res.sample.image.px(res.center_y, res.center_x)[0] == 1);
  CHECK(res.center_x >= 20);
  CHECK(res.center_x <= 60);
}

TEST_CASE("mosaic instance fully inside its quadrant scales its area") {
  // A 100x100 square near the top-left corner of the bottom-right input
  // always lands next to the centre point, inside the canvas. Nearest
  // resampling is off by at most one pixel per side, under 1% here.
  MosaicParams p;
  p.base_width = p.base_height = 640;
  p.short_side_min = 300;
  p.short_side_max = 600;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<Sample> four(4);
    for (auto& s : four) s.image = Image(200, 280, 5);
    four[3].instances.push_back(make_instance(9, 1, rect_mask(200, 280, 2, 3, 102, 103)));
    const auto res = mosaic(four, p, seed);
    REQUIRE(res.sample.instances.size() == 1);
    const auto& pl = res.placements[3];
    const double r = static_cast<double>(pl.resized_h) / 200.0;
    const double expect = 10000.0 * r * r;
    CHECK(std::abs(res.sample.instances[0].area - expect) <= 0.02 * expect);
  }
}

TEST_CASE("mosaic clipping matches a brute-force transformed mask") {
  std::mt19937_64 gen(4);
  MosaicParams p;
  p.base_width = 60;
  p.base_height = 50;
  p.short_side_min = 30;
  p.short_side_max = 90;
  p.min_box_area = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Sample> four;
    for (int q = 0; q < 4; ++q) {
      four.push_back(coordinate_sample(gen, 30 + q * 5, 40, static_cast<std::uint8_t>(q), 4));
    }
    const auto res = mosaic(four, p, static_cast<std::uint64_t>(trial));
    const Sample& out = res.sample;
    check_geometry(out);
    CHECK(out.image.width == 120);
    CHECK(out.image.height == 100);
    for (const auto& inst : out.instances) {
      const Sample& in = four[static_cast<std::size_t>(inst.source)];
      const auto& pl = res.placements[static_cast<std::size_t>(inst.source)];
      const Instance* orig = nullptr;
      for (const auto& i : in.instances)
        if (i.id == inst.source_annotation_id) orig = &i;
      REQUIRE(orig != nullptr);
      // Unclipped transform of the source mask, then the quadrant window.
      std::int64_t expect = 0;
      for (int ly = 0; ly < pl.resized_h; ++ly) {
        for (int lx = 0; lx < pl.resized_w; ++lx) {
          const int sy = static_cast<int>((ly + 0.5) * in.image.height / pl.resized_h);
          const int sx = static_cast<int>((lx + 0.5) * in.image.width / pl.resized_w);
          if (!orig->mask.at(std::min(sy, in.image.height - 1), std::min(sx, in.image.width - 1)))
            continue;
          const int y = pl.offset_y + ly, x = pl.offset_x + lx;
          const bool inside = x >= pl.x0 && x < pl.x1 && y >= pl.y0 && y < pl.y1;
          if (inside) {
            ++expect;
            CHECK(inst.mask.at(y, x));
          }
        }
      }
      CHECK(inst.area == static_cast<double>(expect));
      CHECK(provenance_fraction(inst, out.image, in, inst.source) >= 0.98);
    }
    CHECK(mosaic(four, p, static_cast<std::uint64_t>(trial)).sample == out);
  }
}

TEST_CASE("mosaic drops clipped boxes below the minimum area") {
  std::mt19937_64 gen(5);
  MosaicParams p;
  p.base_width = p.base_height = 40;
  p.short_side_min = 10;
  p.short_side_max = 60;
  p.min_box_area = 30.0;
  int dropped = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Sample> four;
    for (int q = 0; q < 4; ++q) four.push_back(coordinate_sample(gen, 30, 30, 0, 5));
    const auto res = mosaic(four, p, static_cast<std::uint64_t>(trial));
    for (const auto& inst : res.sample.instances) CHECK(inst.bbox.area() >= 30.0);
    CHECK(res.sample.instances.size() + static_cast<std::size_t>(res.dropped) == 20);
    dropped += res.dropped;
  }
  CHECK(dropped > 0);
}

TEST_CASE("MosaicStream apply probability") {
  MosaicParams p;
  p.base_width = p.base_height = 4;
  p.short_side_min = 2;
  p.short_side_max = 6;
  int counter = 0;
  auto source = [&counter]() {
    Sample s;
    s.image_id = ++counter;
    s.image = Image(3, 3, static_cast<std::uint8_t>(counter % 256));
    return s;
  };

  p.apply_prob = 0.0;
  MosaicStream never(source, p, 1);
  for (int i = 1; i <= 100; ++i) {
    const auto o = never.next();
    CHECK_FALSE(o.mosaicked);
    CHECK(o.sample.image_id == i);
    CHECK(o.sample.image == Image(3, 3, static_cast<std::uint8_t>(i)));
  }

  p.apply_prob = 1.0;
  counter = 0;
  MosaicStream always(source, p, 1);
  for (int i = 0; i < 100; ++i) {
    const auto o = always.next();
    CHECK(o.mosaicked);
    CHECK(o.sample.image.width == 8);
  }
  CHECK(counter == 400);

  p.apply_prob = 0.5;
  MosaicStream half(source, p, 77);
  int mosaics = 0;
  for (int i = 0; i < 10000; ++i) mosaics += half.next().mosaicked;
  CHECK(std::abs(mosaics / 1e4 - 0.5) <= 0.02);

  MosaicStream a(source, p, 5), b(source, p, 5);
  for (int i = 0; i < 50; ++i) {
    counter = 0;
    const auto x = a.next();
    counter = 0;
    const auto y = b.next();
    CHECK(x.mosaicked == y.mosaicked);
    CHECK(x.sample == y.sample);
  }
}

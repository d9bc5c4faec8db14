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

#ifndef LONGTAIL_TESTS_SUPPORT_HPP_
#define LONGTAIL_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "longtail/anno/dataset.hpp"

namespace longtail::testing {

inline Polygon rect_polygon(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

inline BinaryMask rect_mask(int h, int w, int x0, int y0, int x1, int y1) {
  BinaryMask m(h, w);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) m.set(y, x, true);
  return m;
}

inline BinaryMask random_mask(std::mt19937_64& gen, int h, int w,
                              double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(h, w);
  for (auto& b : m.bits) b = on(gen) ? 1 : 0;
  return m;
}

// Builds a dataset of `num_images` 16x16 images where category c appears
// (one 2x2 box) in the images listed in placements[c].
inline Dataset dataset_from_placements(
    int num_images, const std::map<std::int64_t, std::vector<std::int64_t>>& placements) {
  std::vector<ImageRecord> images;
  for (int i = 1; i <= num_images; ++i) images.push_back({i, 16, 16, ""});
  std::vector<CategoryRecord> cats;
  std::vector<AnnotationRecord> anns;
  std::int64_t next = 1;
  for (const auto& [cat, imgs] : placements) {
    const auto count = static_cast<std::int64_t>(imgs.size());
    cats.push_back({cat, "c" + std::to_string(cat), count, bucket_for_image_count(count)});
    for (auto img : imgs) {
      anns.push_back({next++, img, cat,
                      std::vector<Polygon>{rect_polygon(0, 0, 2, 2)},
                      {0, 0, 2, 2}, 4.0});
    }
  }
  return Dataset(images, cats, anns);
}

}  // namespace longtail::testing

#endif  // LONGTAIL_TESTS_SUPPORT_HPP_

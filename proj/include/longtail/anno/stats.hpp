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

#ifndef LONGTAIL_ANNO_STATS_HPP_
#define LONGTAIL_ANNO_STATS_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "longtail/anno/dataset.hpp"

namespace longtail {

struct CategoryStat {
  std::int64_t category_id = 0;
  std::int64_t instance_count = 0;
  std::int64_t image_count = 0;
  Bucket bucket = Bucket::kRare;
};

// Per-category counts plus how categories and instances split across the
// rare/common/frequent buckets. Arrays are indexed by Bucket.
struct CategoryStats {
  std::vector<CategoryStat> per_category;  // dataset category order
  std::array<std::int64_t, kNumBuckets> categories_per_bucket{};
  std::array<std::int64_t, kNumBuckets> instances_per_bucket{};
  std::array<double, kNumBuckets> category_fraction{};
  std::array<double, kNumBuckets> instance_fraction{};
  std::int64_t total_categories = 0;
  std::int64_t total_instances = 0;
};

// image_count and bucket come from the category records; instance_count is
// counted from the annotations. Fractions are zero for an empty dataset.
CategoryStats category_stats(const Dataset& ds);

}  // namespace longtail

#endif  // LONGTAIL_ANNO_STATS_HPP_

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

#include "longtail/anno/stats.hpp"

namespace longtail {

CategoryStats category_stats(const Dataset& ds) {
  CategoryStats out;
  out.per_category.reserve(ds.categories().size());
  for (const auto& c : ds.categories()) {
    out.per_category.push_back({c.id, 0, c.image_count, c.bucket});
  }
  for (const auto& a : ds.annotations()) {
    ++out.per_category[ds.category_index(a.category_id)].instance_count;
  }
  for (const auto& s : out.per_category) {
    const auto b = static_cast<std::size_t>(s.bucket);
    ++out.categories_per_bucket[b];
    out.instances_per_bucket[b] += s.instance_count;
  }
  out.total_categories = static_cast<std::int64_t>(out.per_category.size());
  out.total_instances = static_cast<std::int64_t>(ds.annotations().size());
  for (int b = 0; b < kNumBuckets; ++b) {
    if (out.total_categories > 0) {
      out.category_fraction[b] = static_cast<double>(out.categories_per_bucket[b]) /
                                 static_cast<double>(out.total_categories);
    }
    if (out.total_instances > 0) {
      out.instance_fraction[b] = static_cast<double>(out.instances_per_bucket[b]) /
                                 static_cast<double>(out.total_instances);
    }
  }
  return out;
}

}  // namespace longtail

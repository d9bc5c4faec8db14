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

#include "longtail/rfs/rfs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "longtail/common/error.hpp"
#include "longtail/common/random.hpp"

namespace longtail {

double category_repeat_factor(double frequency, double threshold) {
  return std::max(1.0, std::sqrt(threshold / frequency));
}

RepeatFactors compute_repeat_factors(const Dataset& ds, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("RFS threshold must lie in (0, 1]");
  }
  if (ds.images().empty()) {
    throw ValidationError("repeat factors need at least one image");
  }
  RepeatFactors rf;
  rf.threshold = threshold;
  const auto num_images = static_cast<double>(ds.images().size());
  for (const auto& c : ds.categories()) {
    const double count = static_cast<double>(std::max<std::int64_t>(1, c.image_count));
    rf.per_category[c.id] = category_repeat_factor(count / num_images, threshold);
  }
  for (const auto& im : ds.images()) {
    double r = 1.0;
    for (std::size_t idx : ds.annotations_of_image(im.id)) {
      r = std::max(r, rf.per_category.at(ds.annotations()[idx].category_id));
    }
    rf.per_image[im.id] = r;
  }
  return rf;
}

EpochSchedule build_epoch_schedule(const RepeatFactors& rf,
                                   std::uint64_t epoch_index,
                                   std::uint64_t seed) {
  EpochSchedule out{epoch_index, seed, {}};
  Rng rng(derive_seed(seed, epoch_index));
  for (const auto& [image_id, r] : rf.per_image) {
    const double whole = std::floor(r);
    auto copies = static_cast<std::int64_t>(whole);
    if (rng.bernoulli(r - whole)) ++copies;
    out.entries.insert(out.entries.end(), static_cast<std::size_t>(copies), image_id);
  }
  rng.shuffle(std::span<std::int64_t>(out.entries));
  return out;
}

std::string schedule_to_json(const EpochSchedule& schedule) {
  nlohmann::json j;
  j["seed"] = schedule.seed;
  j["epoch"] = schedule.epoch_index;
  j["entries"] = schedule.entries;
  return j.dump();
}

std::string repeat_factors_to_csv(const RepeatFactors& rf) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "scope,id,repeat_factor\n";
  for (const auto& [id, r] : rf.per_category) out << "category," << id << ',' << r << '\n';
  for (const auto& [id, r] : rf.per_image) out << "image," << id << ',' << r << '\n';
  return out.str();
}

}  // namespace longtail

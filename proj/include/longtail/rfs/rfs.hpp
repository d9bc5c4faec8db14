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

#ifndef LONGTAIL_RFS_RFS_HPP_
#define LONGTAIL_RFS_RFS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "longtail/anno/dataset.hpp"

namespace longtail {

inline constexpr double kDefaultRfsThreshold = 0.001;

// Repeat factor sampling: each category gets r_c = max(1, sqrt(t / f_c))
// where f_c is the fraction of images containing it; each image gets the
// largest r_c among its categories (1 for unannotated images).
struct RepeatFactors {
  double threshold = kDefaultRfsThreshold;
  std::map<std::int64_t, double> per_category;
  std::map<std::int64_t, double> per_image;
};

// max(1, sqrt(threshold / frequency)).
double category_repeat_factor(double frequency, double threshold);

// Throws ConfigError unless 0 < t <= 1, ValidationError for a dataset
// without images. A category whose image_count is 0 is treated as if it
// appeared in exactly one image.
RepeatFactors compute_repeat_factors(const Dataset& ds,
                                     double threshold = kDefaultRfsThreshold);

struct EpochSchedule {
  std::uint64_t epoch_index = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> entries;

  bool operator==(const EpochSchedule&) const = default;
};

// Image I appears floor(r_I) times plus one extra with probability
// frac(r_I), then the entries are shuffled. Draws come from a stream derived
// from (seed, epoch_index), so any epoch can be regenerated on its own.
EpochSchedule build_epoch_schedule(const RepeatFactors& rf,
                                   std::uint64_t epoch_index,
                                   std::uint64_t seed);

// {"seed": ..., "epoch": ..., "entries": [...]}
std::string schedule_to_json(const EpochSchedule& schedule);

// Header `scope,id,repeat_factor`; category rows then image rows.
std::string repeat_factors_to_csv(const RepeatFactors& rf);

}  // namespace longtail

#endif  // LONGTAIL_RFS_RFS_HPP_

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

#ifndef LONGTAIL_COMPOSITOR_COPY_PASTE_HPP_
#define LONGTAIL_COMPOSITOR_COPY_PASTE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "longtail/anno/dataset.hpp"
#include "longtail/compositor/sample.hpp"

namespace longtail {

struct PasteParams {
  int n_instances = 6;
  std::array<double, kNumBuckets> bucket_weights = {1.0, 1.0, 1.0};  // rare, common, frequent
  double scale_lo = 0.5;
  double scale_hi = 1.5;
  double hflip_prob = 0.5;
  double min_remaining_area_frac = 0.1;

  bool operator==(const PasteParams&) const = default;
};

void validate_paste_params(const PasteParams& params);

// Draws params.n_instances annotation ids: a bucket with probability
// proportional to its weight (among weighted buckets that hold any
// annotation), then an annotation of that bucket uniformly.
std::vector<std::int64_t> select_paste_instances(const Dataset& ds, const PasteParams& params,
                                                 std::uint64_t seed);

struct PasteSource {
  const Sample* sample = nullptr;
  std::size_t instance = 0;  // index into sample->instances
};

struct CopyPasteResult {
  Sample sample;
  std::vector<std::string> warnings;
  int pasted = 0;
  int dropped = 0;
};

CopyPasteResult copy_paste(const Sample& target, const std::vector<PasteSource>& sources,
                           const PasteParams& params, std::uint64_t seed);

}  // namespace longtail

#endif  // LONGTAIL_COMPOSITOR_COPY_PASTE_HPP_

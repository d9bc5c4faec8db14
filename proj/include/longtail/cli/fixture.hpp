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

#ifndef LONGTAIL_CLI_FIXTURE_HPP_
#define LONGTAIL_CLI_FIXTURE_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "longtail/anno/dataset.hpp"
#include "longtail/compositor/image.hpp"

namespace longtail {

struct FixtureParams {
  int n_categories = 50;
  double zipf_s = 1.2;
  int n_images = 1000;
  std::uint64_t seed = 0;

  bool operator==(const FixtureParams&) const = default;
};

// Per-bucket truth recorded while generating, independent of parsing.
struct FixtureTruth {
  std::array<std::int64_t, kNumBuckets> categories_per_bucket{};
  std::array<std::int64_t, kNumBuckets> instances_per_bucket{};
  std::array<double, kNumBuckets> category_fraction{};
  std::array<double, kNumBuckets> instance_fraction{};
  std::vector<std::int64_t> image_counts;  // by category, id order
};

struct Fixture {
  std::string annotations_json;
  std::string sidecar_json;
  FixtureTruth truth;
  std::vector<std::string> warnings;
};

// Category k (1-based) appears in round(n_images * k^-s) distinct images
// (clamped to [1, n_images]) with 1-3 rectangle or ellipse instances each.
// Categories carry no image_count, so parsing recomputes it.
Fixture generate_fixture(const FixtureParams& params);

// Flat background with every instance painted in its category colour.
Image render_fixture_image(const Dataset& ds, std::int64_t image_id);

}  // namespace longtail

#endif  // LONGTAIL_CLI_FIXTURE_HPP_

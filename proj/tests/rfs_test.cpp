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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "longtail/common/error.hpp"
#include "longtail/rfs/rfs.hpp"
#include "support.hpp"

using namespace longtail;
using longtail::testing::dataset_from_placements;

namespace {

std::vector<std::int64_t> range_ids(std::int64_t first, std::int64_t last) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(last - first + 1));
  std::iota(v.begin(), v.end(), first);
  return v;
}

}  // namespace

TEST_CASE("repeat factors: frequency equal to threshold gives 1") {
  // 1000 images, each category in exactly one image: f = 0.001 = t.
  std::map<std::int64_t, std::vector<std::int64_t>> p;
  for (int c = 1; c <= 20; ++c) p[c] = {c};
  const auto rf = compute_repeat_factors(dataset_from_placements(1000, p), 0.001);
  for (const auto& [_, r] : rf.per_category) CHECK(r == 1.0);
  for (const auto& [_, r] : rf.per_image) CHECK(r == 1.0);
}

TEST_CASE("repeat factors: f = t/100 gives 10") {
  // 100 images, t = 1, category in one image: f = 0.01, sqrt(1/0.01) = 10.
  const auto rf = compute_repeat_factors(dataset_from_placements(100, {{1, {5}}}), 1.0);
  CHECK(rf.per_category.at(1) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(rf.per_image.at(5) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(rf.per_image.at(6) == 1.0);
}

TEST_CASE("repeat factors: image takes the max over its categories") {
  // 1000 images, t = 0.1024: category 1 in 10 images -> sqrt(10.24) = 3.2;
  // category 2 in all images -> 1.
  const auto rf = compute_repeat_factors(
      dataset_from_placements(1000, {{1, range_ids(1, 10)}, {2, range_ids(1, 1000)}}),
      0.1024);
  CHECK(rf.per_category.at(1) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(rf.per_category.at(2) == 1.0);
  CHECK(rf.per_image.at(3) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(rf.per_image.at(500) == 1.0);
}

TEST_CASE("repeat factors: threshold validation") {
  const Dataset ds = dataset_from_placements(4, {{1, {1}}});
  CHECK_THROWS_AS(compute_repeat_factors(ds, 0.0), ConfigError);
  CHECK_THROWS_AS(compute_repeat_factors(ds, -0.1), ConfigError);
  CHECK_THROWS_AS(compute_repeat_factors(ds, 1.5), ConfigError);
  CHECK_THROWS_AS(compute_repeat_factors(Dataset(), 0.001), ValidationError);
}

TEST_CASE("repeat factors: monotone in category frequency") {
  const double t = 0.3;
  double prev = 0.0;
  for (int count = 1000; count >= 1; --count) {
    const double r = category_repeat_factor(count / 1000.0, t);
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("schedule: unit factors give a permutation") {
  std::map<std::int64_t, std::vector<std::int64_t>> p{{1, range_ids(1, 50)}};
  const auto rf = compute_repeat_factors(dataset_from_placements(50, p), 0.001);
  auto s = build_epoch_schedule(rf, 3, 42);
  auto sorted = s.entries;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == range_ids(1, 50));
}

TEST_CASE("schedule: identical seed and epoch reproduce, others differ") {
  std::map<std::int64_t, std::vector<std::int64_t>> p{{1, {1, 2}}, {2, range_ids(1, 200)}};
  const auto rf = compute_repeat_factors(dataset_from_placements(200, p), 0.05);
  CHECK(build_epoch_schedule(rf, 7, 11) == build_epoch_schedule(rf, 7, 11));
  CHECK(build_epoch_schedule(rf, 7, 11).entries != build_epoch_schedule(rf, 8, 11).entries);
  CHECK(build_epoch_schedule(rf, 7, 11).entries != build_epoch_schedule(rf, 7, 12).entries);
}

TEST_CASE("schedule: mean multiplicity of r = 2.5 over 1000 epochs") {
  RepeatFactors rf;
  rf.per_image = {{1, 1.0}, {2, 2.5}, {3, 1.0}};
  double total = 0;
  for (std::uint64_t e = 0; e < 1000; ++e) {
    const auto s = build_epoch_schedule(rf, e, 2024);
    const auto m = std::count(s.entries.begin(), s.entries.end(), 2);
    CHECK((m == 2 || m == 3));
    total += static_cast<double>(m);
  }
  CHECK(std::abs(total / 1000.0 - 2.5) <= 0.05 * 2.5);
}

TEST_CASE("schedule: expected length and rare-image preference") {
  // Category 1 is rare (3 images), category 2 covers everything.
  std::map<std::int64_t, std::vector<std::int64_t>> p{{1, {1, 2, 3}}, {2, range_ids(1, 300)}};
  const auto rf = compute_repeat_factors(dataset_from_placements(300, p), 0.1);
  double expected = 0;
  for (const auto& [_, r] : rf.per_image) expected += r;
  double total = 0;
  std::map<std::int64_t, double> counts;
  for (std::uint64_t e = 0; e < 1000; ++e) {
    const auto s = build_epoch_schedule(rf, e, 5);
    total += static_cast<double>(s.entries.size());
    for (auto id : s.entries) counts[id] += 1;
  }
  CHECK(std::abs(total / 1000.0 - expected) <= 0.01 * expected);
  CHECK(rf.per_image.at(1) > 1.0);
  CHECK(counts[1] > counts[100]);
  CHECK(counts[100] == 1000.0);
}

TEST_CASE("schedule JSON and factor CSV") {
  RepeatFactors rf;
  rf.per_category = {{1, 1.5}};
  rf.per_image = {{9, 1.5}};
  const EpochSchedule s{2, 77, {9, 9}};
  CHECK(schedule_to_json(s) == R"({"entries":[9,9],"epoch":2,"seed":77})");
  CHECK(repeat_factors_to_csv(rf) == "scope,id,repeat_factor\ncategory,1,1.5\nimage,9,1.5\n");
}

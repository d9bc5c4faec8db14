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

#ifndef LONGTAIL_COMPOSITOR_SAMPLE_HPP_
#define LONGTAIL_COMPOSITOR_SAMPLE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "longtail/anno/dataset.hpp"
#include "longtail/compositor/image.hpp"

namespace longtail {

struct Instance {
  std::int64_t id = 0;
  std::int64_t category_id = 0;
  BinaryMask mask;
  Box bbox;
  double area = 0.0;
  // Provenance: which input of the composition produced the instance
  // (-1 for the paste target) and the annotation id it had there.
  int source = -1;
  std::int64_t source_annotation_id = 0;

  bool operator==(const Instance&) const = default;
};

// Recomputes bbox and area from the mask.
void refresh_geometry(Instance& inst);

struct Sample {
  std::int64_t image_id = 0;
  Image image;
  std::vector<Instance> instances;

  bool operator==(const Sample&) const = default;
};

// Pairs an image with the decoded annotations of `image_id`. The image
// extent must match the record.
Sample make_sample(const Dataset& ds, std::int64_t image_id, Image image);

Sample load_sample(const Dataset& ds, std::int64_t image_id,
                   const std::filesystem::path& image_dir);

// One-image dataset holding the sample's instances (RLE segmentations),
// with the categories of `schema`.
Dataset sample_to_dataset(const Sample& sample, const Dataset& schema,
                          const std::string& file_name);

}  // namespace longtail

#endif  // LONGTAIL_COMPOSITOR_SAMPLE_HPP_

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

#include "longtail/compositor/sample.hpp"

#include "longtail/common/error.hpp"

namespace longtail {

void refresh_geometry(Instance& inst) {
  inst.bbox = mask_bbox(inst.mask);
  inst.area = static_cast<double>(inst.mask.area());
}

Sample make_sample(const Dataset& ds, std::int64_t image_id, Image image) {
  const auto& rec = ds.image(image_id);
  if (image.height != rec.height || image.width != rec.width) {
    throw ValidationError("image " + std::to_string(image_id) + " is " +
                          std::to_string(image.width) + "x" + std::to_string(image.height) +
                          ", annotation file says " + std::to_string(rec.width) + "x" +
                          std::to_string(rec.height));
  }
  Sample s;
  s.image_id = image_id;
  s.image = std::move(image);
  for (std::size_t idx : ds.annotations_of_image(image_id)) {
    const auto& ann = ds.annotations()[idx];
    Instance inst;
    inst.id = ann.id;
    inst.category_id = ann.category_id;
    inst.mask = decode_segmentation(ann.segmentation, rec);
    inst.source_annotation_id = ann.id;
    refresh_geometry(inst);
    s.instances.push_back(std::move(inst));
  }
  return s;
}

Sample load_sample(const Dataset& ds, std::int64_t image_id,
                   const std::filesystem::path& image_dir) {
  const auto& rec = ds.image(image_id);
  if (rec.file_name.empty()) {
    throw ValidationError("image " + std::to_string(image_id) + " has no file_name");
  }
  return make_sample(ds, image_id, read_png(image_dir / rec.file_name));
}

Dataset sample_to_dataset(const Sample& sample, const Dataset& schema,
                          const std::string& file_name) {
  std::vector<ImageRecord> images = {
      {sample.image_id, sample.image.width, sample.image.height, file_name}};
  std::vector<AnnotationRecord> anns;
  anns.reserve(sample.instances.size());
  for (const auto& inst : sample.instances) {
    anns.push_back({inst.id, sample.image_id, inst.category_id, rle_encode(inst.mask), inst.bbox,
                    inst.area});
  }
  return Dataset(std::move(images), schema.categories(), std::move(anns));
}

}  // namespace longtail

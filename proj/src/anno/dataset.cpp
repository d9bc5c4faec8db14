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

#include "longtail/anno/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "longtail/common/error.hpp"
#include "longtail/common/parallel.hpp"

namespace longtail {

using json = nlohmann::json;

std::string_view bucket_name(Bucket b) {
  switch (b) {
    case Bucket::kRare:
      return "rare";
    case Bucket::kCommon:
      return "common";
    case Bucket::kFrequent:
      return "frequent";
  }
  return "unknown";
}

char bucket_letter(Bucket b) {
  switch (b) {
    case Bucket::kRare:
      return 'r';
    case Bucket::kCommon:
      return 'c';
    case Bucket::kFrequent:
      return 'f';
  }
  return '?';
}

Dataset::Dataset(std::vector<ImageRecord> images,
                 std::vector<CategoryRecord> categories,
                 std::vector<AnnotationRecord> annotations)
    : images_(std::move(images)),
      categories_(std::move(categories)),
      annotations_(std::move(annotations)) {
  image_index_.reserve(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto& im = images_[i];
    if (im.width < 1 || im.height < 1) {
      throw ValidationError("image " + std::to_string(im.id) +
                            " has a non-positive extent");
    }
    if (!image_index_.emplace(im.id, i).second) {
      throw ValidationError("duplicate image id " + std::to_string(im.id));
    }
  }
  category_index_.reserve(categories_.size());
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (!category_index_.emplace(categories_[i].id, i).second) {
      throw ValidationError("duplicate category id " +
                            std::to_string(categories_[i].id));
    }
  }
  by_image_.resize(images_.size());
  std::unordered_set<std::int64_t> ann_ids;
  ann_ids.reserve(annotations_.size());
  for (std::size_t i = 0; i < annotations_.size(); ++i) {
    const auto& a = annotations_[i];
    if (!ann_ids.insert(a.id).second) {
      throw ValidationError("duplicate annotation id " + std::to_string(a.id));
    }
    auto im = image_index_.find(a.image_id);
    if (im == image_index_.end()) {
      throw ValidationError("annotation " + std::to_string(a.id) +
                            " references unknown image_id " +
                            std::to_string(a.image_id));
    }
    if (!category_index_.contains(a.category_id)) {
      throw ValidationError("annotation " + std::to_string(a.id) +
                            " references unknown category_id " +
                            std::to_string(a.category_id));
    }
    by_image_[im->second].push_back(i);
  }
}

const ImageRecord& Dataset::image(std::int64_t id) const {
  return images_[image_index(id)];
}

const CategoryRecord& Dataset::category(std::int64_t id) const {
  return categories_[category_index(id)];
}

std::size_t Dataset::image_index(std::int64_t id) const {
  auto it = image_index_.find(id);
  if (it == image_index_.end()) {
    throw ValidationError("unknown image_id " + std::to_string(id));
  }
  return it->second;
}

std::size_t Dataset::category_index(std::int64_t id) const {
  auto it = category_index_.find(id);
  if (it == category_index_.end()) {
    throw ValidationError("unknown category_id " + std::to_string(id));
  }
  return it->second;
}

const std::vector<std::size_t>& Dataset::annotations_of_image(
    std::int64_t id) const {
  return by_image_[image_index(id)];
}

BinaryMask decode_segmentation(const Segmentation& seg,
                               const ImageRecord& image) {
  if (const auto* polys = std::get_if<std::vector<Polygon>>(&seg)) {
    return polygons_to_mask(*polys, image.height, image.width);
  }
  const auto& rle = std::get<RleMask>(seg);
  if (rle.height != image.height || rle.width != image.width) {
    throw ValidationError("RLE extent does not match image " +
                          std::to_string(image.id));
  }
  return rle_decode(rle);
}

namespace {

Segmentation parse_segmentation(const json& j, std::int64_t ann_id) {
  if (j.is_array()) {
    std::vector<Polygon> polys;
    polys.reserve(j.size());
    for (const auto& flat : j) {
      if (!flat.is_array() || flat.size() % 2 != 0) {
        throw ValidationError("annotation " + std::to_string(ann_id) +
                              ": polygon must be a flat list of x,y pairs");
      }
      Polygon poly;
      poly.reserve(flat.size() / 2);
      for (std::size_t k = 0; k < flat.size(); k += 2) {
        poly.push_back({flat[k].get<double>(), flat[k + 1].get<double>()});
      }
      if (poly.size() < 3) {
        throw ValidationError("annotation " + std::to_string(ann_id) +
                              ": polygon with fewer than 3 vertices");
      }
      polys.push_back(std::move(poly));
    }
    return polys;
  }
  if (j.is_object()) {
    const auto& size = j.at("size");
    const int h = size.at(0).get<int>();
    const int w = size.at(1).get<int>();
    const auto& counts = j.at("counts");
    if (counts.is_string()) {
      return rle_from_string(counts.get_ref<const std::string&>(), h, w);
    }
    RleMask rle{h, w, counts.get<std::vector<std::uint32_t>>()};
    rle_decode(rle);  // validates the run sum
    return rle;
  }
  throw ValidationError("annotation " + std::to_string(ann_id) +
                        ": unsupported segmentation encoding");
}

std::string basename_of(const std::string& url) {
  const auto slash = url.find_last_of('/');
  return slash == std::string::npos ? url : url.substr(slash + 1);
}

}  // namespace

Dataset parse_dataset(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw ValidationError("top-level JSON must be an object");

  std::vector<ImageRecord> images;
  std::vector<CategoryRecord> categories;
  std::vector<AnnotationRecord> annotations;
  std::vector<bool> has_image_count;
  std::vector<bool> has_bbox;
  std::vector<bool> has_area;

  try {
    for (const auto& j : root.value("images", json::array())) {
      ImageRecord im;
      im.id = j.at("id").get<std::int64_t>();
      im.width = j.at("width").get<int>();
      im.height = j.at("height").get<int>();
      if (j.contains("file_name")) {
        im.file_name = j["file_name"].get<std::string>();
      } else if (j.contains("coco_url")) {
        im.file_name = basename_of(j["coco_url"].get<std::string>());
      }
      images.push_back(std::move(im));
    }
    for (const auto& j : root.value("categories", json::array())) {
      CategoryRecord c;
      c.id = j.at("id").get<std::int64_t>();
      c.name = j.value("name", std::string());
      has_image_count.push_back(j.contains("image_count"));
      if (has_image_count.back()) c.image_count = j["image_count"].get<std::int64_t>();
      categories.push_back(std::move(c));
    }
    for (const auto& j : root.value("annotations", json::array())) {
      AnnotationRecord a;
      a.id = j.at("id").get<std::int64_t>();
      a.image_id = j.at("image_id").get<std::int64_t>();
      a.category_id = j.at("category_id").get<std::int64_t>();
      a.segmentation = parse_segmentation(j.at("segmentation"), a.id);
      has_bbox.push_back(j.contains("bbox"));
      if (has_bbox.back()) {
        const auto& b = j["bbox"];
        a.bbox = {b.at(0).get<double>(), b.at(1).get<double>(),
                  b.at(2).get<double>(), b.at(3).get<double>()};
      }
      has_area.push_back(j.contains("area"));
      if (has_area.back()) a.area = j["area"].get<double>();
      annotations.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad field: ") + e.what());
  }

  // Reference checks first so dangling ids are reported before any decoding.
  Dataset checked(images, categories, {});
  for (const auto& a : annotations) {
    if (!checked.has_image(a.image_id)) {
      throw ValidationError("annotation " + std::to_string(a.id) +
                            " references unknown image_id " +
                            std::to_string(a.image_id));
    }
    if (!checked.has_category(a.category_id)) {
      throw ValidationError("annotation " + std::to_string(a.id) +
                            " references unknown category_id " +
                            std::to_string(a.category_id));
    }
  }

  parallel_for(annotations.size(), [&](std::size_t i) {
    auto& a = annotations[i];
    const auto& im = checked.image(a.image_id);
    std::int64_t pixels = 0;
    Box box;
    if (const auto* rle = std::get_if<RleMask>(&a.segmentation)) {
      if (rle->height != im.height || rle->width != im.width) {
        throw ValidationError("annotation " + std::to_string(a.id) +
                              ": RLE extent does not match its image");
      }
      pixels = rle->area();
      if (!has_bbox[i]) box = rle_bbox(*rle);
    } else {
      const BinaryMask m = decode_segmentation(a.segmentation, im);
      pixels = m.area();
      if (!has_bbox[i]) box = mask_bbox(m);
    }
    const double tolerance =
        std::holds_alternative<RleMask>(a.segmentation) ? 0.0 : 1.0;
    if (!has_area[i] || std::abs(a.area - static_cast<double>(pixels)) > tolerance) {
      a.area = static_cast<double>(pixels);
    }
    if (!has_bbox[i]) a.bbox = box;
  });

  // image_count: distinct images per category, used where the file omits it.
  std::unordered_map<std::int64_t, std::unordered_set<std::int64_t>> images_per_cat;
  for (const auto& a : annotations) images_per_cat[a.category_id].insert(a.image_id);
  for (std::size_t i = 0; i < categories.size(); ++i) {
    auto& c = categories[i];
    if (!has_image_count[i]) {
      auto it = images_per_cat.find(c.id);
      c.image_count = it == images_per_cat.end()
                          ? 0
                          : static_cast<std::int64_t>(it->second.size());
    }
    c.bucket = bucket_for_image_count(c.image_count);
  }

  return Dataset(std::move(images), std::move(categories),
                 std::move(annotations));
}

namespace {

json segmentation_to_json(const Segmentation& seg) {
  if (const auto* polys = std::get_if<std::vector<Polygon>>(&seg)) {
    json out = json::array();
    for (const auto& poly : *polys) {
      json flat = json::array();
      for (const auto& p : poly) {
        flat.push_back(p.x);
        flat.push_back(p.y);
      }
      out.push_back(std::move(flat));
    }
    return out;
  }
  const auto& rle = std::get<RleMask>(seg);
  return {{"size", {rle.height, rle.width}},
          {"counts", rle_counts_to_string(rle.counts)}};
}

}  // namespace

std::string serialize_dataset(const Dataset& ds) {
  json root;
  json images = json::array();
  for (const auto& im : ds.images()) {
    images.push_back({{"id", im.id},
                      {"width", im.width},
                      {"height", im.height},
                      {"file_name", im.file_name}});
  }
  json categories = json::array();
  for (const auto& c : ds.categories()) {
    categories.push_back({{"id", c.id},
                          {"name", c.name},
                          {"image_count", c.image_count},
                          {"frequency", std::string(1, bucket_letter(c.bucket))}});
  }
  json annotations = json::array();
  for (const auto& a : ds.annotations()) {
    annotations.push_back({{"id", a.id},
                           {"image_id", a.image_id},
                           {"category_id", a.category_id},
                           {"segmentation", segmentation_to_json(a.segmentation)},
                           {"bbox", {a.bbox.x, a.bbox.y, a.bbox.w, a.bbox.h}},
                           {"area", a.area}});
  }
  root["images"] = std::move(images);
  root["categories"] = std::move(categories);
  root["annotations"] = std::move(annotations);
  return root.dump();
}

}  // namespace longtail

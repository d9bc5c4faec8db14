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

#ifndef LONGTAIL_ANNO_DATASET_HPP_
#define LONGTAIL_ANNO_DATASET_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "longtail/anno/mask.hpp"
#include "longtail/anno/raster.hpp"

namespace longtail {

// LVIS frequency partition by training-image count.
enum class Bucket : std::uint8_t { kRare = 0, kCommon = 1, kFrequent = 2 };

inline constexpr int kNumBuckets = 3;
inline constexpr std::int64_t kRareMaxImages = 10;
inline constexpr std::int64_t kCommonMaxImages = 100;

// rare: <= 10 images, common: 11..100, frequent: > 100.
constexpr Bucket bucket_for_image_count(std::int64_t image_count) {
  if (image_count <= kRareMaxImages) return Bucket::kRare;
  if (image_count <= kCommonMaxImages) return Bucket::kCommon;
  return Bucket::kFrequent;
}

// "rare" / "common" / "frequent".
std::string_view bucket_name(Bucket b);
// The single-letter LVIS `frequency` code: 'r', 'c' or 'f'.
char bucket_letter(Bucket b);

struct ImageRecord {
  std::int64_t id = 0;
  int width = 0;
  int height = 0;
  std::string file_name;

  bool operator==(const ImageRecord&) const = default;
};

struct CategoryRecord {
  std::int64_t id = 0;
  std::string name;
  std::int64_t image_count = 0;
  Bucket bucket = Bucket::kRare;

  bool operator==(const CategoryRecord&) const = default;
};

using Segmentation = std::variant<std::vector<Polygon>, RleMask>;

struct AnnotationRecord {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  Segmentation segmentation;
  Box bbox;
  double area = 0.0;

  bool operator==(const AnnotationRecord&) const = default;
};

// Immutable, validated annotation set. Construction checks id uniqueness and
// reference integrity; lookups by id are O(1).
class Dataset {
 public:
  Dataset() = default;
  // Throws ValidationError on duplicate ids or dangling references, or when
  // an image has a non-positive extent.
  Dataset(std::vector<ImageRecord> images,
          std::vector<CategoryRecord> categories,
          std::vector<AnnotationRecord> annotations);

  const std::vector<ImageRecord>& images() const { return images_; }
  const std::vector<CategoryRecord>& categories() const { return categories_; }
  const std::vector<AnnotationRecord>& annotations() const {
    return annotations_;
  }

  bool has_image(std::int64_t id) const { return image_index_.contains(id); }
  bool has_category(std::int64_t id) const {
    return category_index_.contains(id);
  }
  // Throw ValidationError for unknown ids.
  const ImageRecord& image(std::int64_t id) const;
  const CategoryRecord& category(std::int64_t id) const;
  std::size_t image_index(std::int64_t id) const;
  std::size_t category_index(std::int64_t id) const;

  // Annotation indices grouped by image, in annotation order.
  const std::vector<std::size_t>& annotations_of_image(std::int64_t id) const;

  bool operator==(const Dataset& other) const {
    return images_ == other.images_ && categories_ == other.categories_ &&
           annotations_ == other.annotations_;
  }

 private:
  std::vector<ImageRecord> images_;
  std::vector<CategoryRecord> categories_;
  std::vector<AnnotationRecord> annotations_;
  std::unordered_map<std::int64_t, std::size_t> image_index_;
  std::unordered_map<std::int64_t, std::size_t> category_index_;
  std::vector<std::vector<std::size_t>> by_image_;
};

// Rasterizes or decodes an annotation's segmentation on its image grid.
// RLE segmentations must match the image extent (ValidationError otherwise).
BinaryMask decode_segmentation(const Segmentation& seg,
                               const ImageRecord& image);

// Parses COCO/LVIS JSON. Missing `image_count` is recomputed from the
// annotations; every mask is decoded to check it fits its image and to fill
// in or correct `area`; a missing `bbox` is derived from the mask. The
// bucket always follows image_count. Throws ParseError (with byte offset) on
// malformed JSON and ValidationError on structural problems.
Dataset parse_dataset(std::string_view json_text);

// Writes the retained fields back as LVIS-style JSON (categories carry
// `image_count` and `frequency`; RLE counts use the compressed string form).
std::string serialize_dataset(const Dataset& ds);

}  // namespace longtail

#endif  // LONGTAIL_ANNO_DATASET_HPP_

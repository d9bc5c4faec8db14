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

#ifndef LONGTAIL_EVAL_IOU_HPP_
#define LONGTAIL_EVAL_IOU_HPP_

#include "longtail/anno/mask.hpp"

namespace longtail {

inline constexpr double kDefaultBoundaryDilationFrac = 0.02;

// |a & b| / |a | b|; two empty masks give 0. Throws ShapeError when the
// extents differ.
double mask_iou(const BinaryMask& a, const BinaryMask& b);

// IoU straight from the runs.
double rle_iou(const RleMask& a, const RleMask& b);

// Foreground pixels within Chebyshev distance d of the complement, where
// everything outside the image counts as complement. Throws ConfigError for
// d < 1.
BinaryMask mask_boundary(const BinaryMask& m, int d);

// ceil(frac * image diagonal), at least 1.
int boundary_dilation_pixels(int height, int width, double frac);

// mask_iou of the two boundary bands at d = boundary_dilation_pixels(...).
double boundary_iou(const BinaryMask& a, const BinaryMask& b,
                    double dilation_frac = kDefaultBoundaryDilationFrac);

}  // namespace longtail

#endif  // LONGTAIL_EVAL_IOU_HPP_

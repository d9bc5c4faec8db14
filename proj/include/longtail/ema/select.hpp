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

#ifndef LONGTAIL_EMA_SELECT_HPP_
#define LONGTAIL_EMA_SELECT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace longtail {

// One evaluation of a checkpoint; APs are percentages.
struct ApRecord {
  int epoch = 0;
  double ap = 0.0;
  double ap_r = 0.0;
  double ap_c = 0.0;
  double ap_f = 0.0;

  bool operator==(const ApRecord&) const = default;
};

struct ApCurve {
  std::vector<ApRecord> records;
};

// Epochs strictly increasing, every AP within [0, 100]. Throws
// ValidationError otherwise.
void validate_curve(const ApCurve& curve);

struct SelectionCriterion {
  enum class Kind { kMaxAp, kMaxMinBucket, kWeighted };

  Kind kind = Kind::kMaxAp;
  double w_r = 1.0;
  double w_c = 1.0;
  double w_f = 1.0;

  static SelectionCriterion max_ap() { return {Kind::kMaxAp}; }
  static SelectionCriterion max_min_bucket() { return {Kind::kMaxMinBucket}; }
  static SelectionCriterion weighted(double r, double c, double f) {
    return {Kind::kWeighted, r, c, f};
  }
};

double criterion_value(const ApRecord& record, const SelectionCriterion& c);

// Epoch with the largest criterion value; the earliest one wins ties.
// Throws SelectionError for an empty curve.
int select_epoch(const ApCurve& curve, const SelectionCriterion& criterion);

// CSV with header `epoch,AP,APr,APc,APf`. Validates the curve.
ApCurve parse_ap_curve_csv(std::string_view text);

// "max_ap", "max_min_bucket" or "weighted:w_r,w_c,w_f".
SelectionCriterion parse_criterion(std::string_view text);

}  // namespace longtail

#endif  // LONGTAIL_EMA_SELECT_HPP_

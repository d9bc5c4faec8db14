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

#include "longtail/ema/select.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "longtail/common/error.hpp"

namespace longtail {

void validate_curve(const ApCurve& curve) {
  for (std::size_t i = 0; i < curve.records.size(); ++i) {
    const auto& r = curve.records[i];
    if (i > 0 && r.epoch <= curve.records[i - 1].epoch) {
      throw ValidationError("AP curve epochs must be strictly increasing");
    }
    for (double v : {r.ap, r.ap_r, r.ap_c, r.ap_f}) {
      if (!(v >= 0.0 && v <= 100.0)) {
        throw ValidationError("AP value outside [0, 100] at epoch " +
                              std::to_string(r.epoch));
      }
    }
  }
}

double criterion_value(const ApRecord& r, const SelectionCriterion& c) {
  switch (c.kind) {
    case SelectionCriterion::Kind::kMaxAp:
      return r.ap;
    case SelectionCriterion::Kind::kMaxMinBucket:
      return std::min({r.ap_r, r.ap_c, r.ap_f});
    case SelectionCriterion::Kind::kWeighted:
      return c.w_r * r.ap_r + c.w_c * r.ap_c + c.w_f * r.ap_f;
  }
  return r.ap;
}

int select_epoch(const ApCurve& curve, const SelectionCriterion& criterion) {
  if (curve.records.empty()) throw SelectionError("empty AP curve");
  validate_curve(curve);
  const ApRecord* best = &curve.records.front();
  double best_value = criterion_value(*best, criterion);
  for (const auto& r : curve.records) {
    const double v = criterion_value(r, criterion);
    if (v > best_value) {
      best = &r;
      best_value = v;
    }
  }
  return best->epoch;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    std::string field(line.substr(start, pos - start));
    field.erase(0, field.find_first_not_of(" \t\r"));
    field.erase(field.find_last_not_of(" \t\r") + 1);
    out.push_back(std::move(field));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

ApCurve parse_ap_curve_csv(std::string_view text) {
  ApCurve curve;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split(line, ',');
    if (header) {
      if (fields != std::vector<std::string>{"epoch", "AP", "APr", "APc", "APf"}) {
        throw ValidationError("AP curve header must be epoch,AP,APr,APc,APf");
      }
      header = false;
      continue;
    }
    if (fields.size() != 5) throw ValidationError("AP curve rows need 5 fields");
    const double epoch = to_double(fields[0]);
    if (epoch != static_cast<int>(epoch)) throw ValidationError("epoch must be an integer");
    curve.records.push_back({static_cast<int>(epoch), to_double(fields[1]),
                             to_double(fields[2]), to_double(fields[3]),
                             to_double(fields[4])});
  }
  if (header) throw ValidationError("AP curve CSV is empty");
  validate_curve(curve);
  return curve;
}

SelectionCriterion parse_criterion(std::string_view text) {
  if (text == "max_ap") return SelectionCriterion::max_ap();
  if (text == "max_min_bucket") return SelectionCriterion::max_min_bucket();
  constexpr std::string_view kWeighted = "weighted:";
  if (text.starts_with(kWeighted)) {
    const auto w = split(text.substr(kWeighted.size()), ',');
    if (w.size() != 3) throw UsageError("weighted criterion needs three weights");
    return SelectionCriterion::weighted(to_double(w[0]), to_double(w[1]), to_double(w[2]));
  }
  throw UsageError("unknown criterion '" + std::string(text) + "'");
}

}  // namespace longtail

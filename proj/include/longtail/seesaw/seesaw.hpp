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

#ifndef LONGTAIL_SEESAW_SEESAW_HPP_
#define LONGTAIL_SEESAW_SEESAW_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace longtail {

// Seesaw classification loss parameters. class_counts holds the cumulative
// number of positive samples seen per class; counts below `eps` are clamped
// to `eps` before forming ratios.
struct SeesawConfig {
  double p = 0.8;    // mitigation exponent
  double q = 2.0;    // compensation exponent
  double eps = 1.0;  // count smoothing
  std::vector<double> class_counts;

  bool operator==(const SeesawConfig&) const = default;
};

struct SeesawEval {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d logits
};

// Per-negative-class weights S_ij = M_ij * C_ij for true class i, with
//   M_ij = min(1, (N_j / N_i)^p)        mitigation
//   C_ij = max(1, (sigma_j / sigma_i)^q) compensation, sigma = softmax(z)
// returned in log space (log S_ii = 0). Both factors are treated as
// constants when differentiating.
std::vector<double> seesaw_log_weights(std::span<const double> logits,
                                       std::size_t label,
                                       const SeesawConfig& cfg);

// loss = -log(exp(z_i) / (sum_{j != i} S_ij exp(z_j) + exp(z_i))), i.e.
// softmax cross-entropy on logits shifted by log S. With p = q = 0 this is
// plain softmax cross-entropy. Throws NumericError for non-finite logits,
// IndexError for a bad label, ShapeError when class_counts does not match
// the logit count and ConfigError for invalid exponents or eps.
SeesawEval seesaw_loss(std::span<const double> logits, std::size_t label,
                       const SeesawConfig& cfg);

// Returns cfg with class_counts[label] incremented once per occurrence.
// Throws IndexError for out-of-range labels.
SeesawConfig update_counts(SeesawConfig cfg,
                           std::span<const std::size_t> batch_labels);

struct GradCheckReport {
  int cases = 0;
  double max_relative_error = 0.0;
};

// Central-difference check (step h) of seesaw_loss gradients on random
// `num_classes`-way problems with random exponents and counts (zeros
// included). The perturbed losses keep the weights S fixed at their
// unperturbed values. The relative error of a case is
// max_k |analytic_k - numeric_k| / max(max_k |analytic_k|, max_k |numeric_k|);
// the report holds the worst case.
GradCheckReport seesaw_grad_check(int cases, int num_classes,
                                  std::uint64_t seed, double h = 1e-5);

}  // namespace longtail

#endif  // LONGTAIL_SEESAW_SEESAW_HPP_

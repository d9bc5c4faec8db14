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

#include "longtail/seesaw/seesaw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "longtail/common/error.hpp"
#include "longtail/common/random.hpp"

namespace longtail {

namespace {

void validate(std::span<const double> logits, std::size_t label,
              const SeesawConfig& cfg) {
  if (!std::isfinite(cfg.p) || !std::isfinite(cfg.q) || cfg.p < 0.0 || cfg.q < 0.0) {
    throw ConfigError("seesaw exponents must be finite and non-negative");
  }
  if (!(cfg.eps > 0.0) || !std::isfinite(cfg.eps)) {
    throw ConfigError("seesaw eps must be positive");
  }
  if (cfg.class_counts.size() != logits.size()) {
    throw ShapeError("class_counts has " + std::to_string(cfg.class_counts.size()) +
                     " entries for " + std::to_string(logits.size()) + " logits");
  }
  if (label >= logits.size()) {
    throw IndexError("label " + std::to_string(label) + " out of range");
  }
  for (double z : logits) {
    if (!std::isfinite(z)) throw NumericError("non-finite logit");
  }
}

}  // namespace

std::vector<double> seesaw_log_weights(std::span<const double> logits,
                                       std::size_t label,
                                       const SeesawConfig& cfg) {
  validate(logits, label, cfg);
  const std::size_t n = logits.size();
  std::vector<double> log_s(n, 0.0);
  const double log_ni = std::log(std::max(cfg.class_counts[label], cfg.eps));
  for (std::size_t j = 0; j < n; ++j) {
    if (j == label) continue;
    double w = 0.0;
    if (cfg.p > 0.0) {
      const double log_nj = std::log(std::max(cfg.class_counts[j], cfg.eps));
      w += std::min(0.0, cfg.p * (log_nj - log_ni));
    }
    if (cfg.q > 0.0) {
      // log(sigma_j / sigma_i) = z_j - z_i
      w += std::max(0.0, cfg.q * (logits[j] - logits[label]));
    }
    log_s[j] = w;
  }
  return log_s;
}

SeesawEval seesaw_loss(std::span<const double> logits, std::size_t label,
                       const SeesawConfig& cfg) {
  const std::vector<double> log_s = seesaw_log_weights(logits, label, cfg);
  const std::size_t n = logits.size();
  std::vector<double> shifted(n);
  for (std::size_t j = 0; j < n; ++j) shifted[j] = logits[j] + log_s[j];

  const double m = *std::max_element(shifted.begin(), shifted.end());
  std::vector<double> e(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = std::exp(shifted[j] - m);
    sum += e[j];
  }
  SeesawEval out;
  out.loss = m + std::log(sum) - shifted[label];
  out.grad.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.grad[j] = e[j] / sum;
  out.grad[label] -= 1.0;
  if (!std::isfinite(out.loss)) throw NumericError("seesaw loss overflowed");
  return out;
}

SeesawConfig update_counts(SeesawConfig cfg,
                           std::span<const std::size_t> batch_labels) {
  for (std::size_t label : batch_labels) {
    if (label >= cfg.class_counts.size()) {
      throw IndexError("label " + std::to_string(label) + " out of range");
    }
  }
  for (std::size_t label : batch_labels) cfg.class_counts[label] += 1.0;
  return cfg;
}

namespace {

// Loss with the weights frozen, evaluated in the product form.
double frozen_weight_loss(std::span<const double> logits, std::size_t label,
                          const std::vector<double>& weights) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double denom = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    denom += weights[j] * std::exp(logits[j] - m);
  }
  return -((logits[label] - m) - std::log(denom));
}

}  // namespace

GradCheckReport seesaw_grad_check(int cases, int num_classes,
                                  std::uint64_t seed, double h) {
  if (num_classes < 2) throw ConfigError("grad check needs at least two classes");
  Rng rng(seed);
  GradCheckReport report;
  for (int c = 0; c < cases; ++c) {
    SeesawConfig cfg;
    cfg.p = rng.uniform(0.0, 2.0);
    cfg.q = rng.uniform(0.0, 3.0);
    cfg.class_counts.resize(static_cast<std::size_t>(num_classes));
    for (auto& n : cfg.class_counts) {
      n = rng.bernoulli(0.2) ? 0.0 : static_cast<double>(rng.uniform_int(0, 5000));
    }
    std::vector<double> z(static_cast<std::size_t>(num_classes));
    for (auto& v : z) v = rng.uniform(-4.0, 4.0);
    const auto label = static_cast<std::size_t>(rng.uniform_int(0, num_classes - 1));

    const SeesawEval eval = seesaw_loss(z, label, cfg);
    std::vector<double> weights = seesaw_log_weights(z, label, cfg);
    for (auto& w : weights) w = std::exp(w);

    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      auto zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      const double numeric =
          (frozen_weight_loss(zp, label, weights) - frozen_weight_loss(zm, label, weights)) /
          (2.0 * h);
      diff = std::max(diff, std::abs(eval.grad[k] - numeric));
      scale = std::max({scale, std::abs(eval.grad[k]), std::abs(numeric)});
    }
    if (scale > 0.0) {
      report.max_relative_error = std::max(report.max_relative_error, diff / scale);
    }
    ++report.cases;
  }
  return report;
}

}  // namespace longtail

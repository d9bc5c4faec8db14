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

#ifndef LONGTAIL_EMA_EMA_HPP_
#define LONGTAIL_EMA_EMA_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace longtail {

inline constexpr double kDefaultEmaDecay = 0.999;

// Exponential moving average of a flat parameter vector. No bias
// correction: the first update copies the weights into the shadow.
struct EmaState {
  double decay = kDefaultEmaDecay;
  std::vector<double> shadow;
  std::uint64_t step = 0;

  bool fresh() const { return step == 0; }
};

// shadow' = decay * shadow + (1 - decay) * weights, step' = step + 1.
// Throws ConfigError unless 0 <= decay < 1 and ShapeError when the weight
// count differs from the shadow of a non-fresh state.
EmaState ema_update(EmaState state, std::span<const double> weights);
EmaState ema_update(EmaState state, std::span<const float> weights);

}  // namespace longtail

#endif  // LONGTAIL_EMA_EMA_HPP_

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

#include "longtail/ema/ema.hpp"

#include <string>

#include "longtail/common/error.hpp"

namespace longtail {

namespace {

template <typename T>
EmaState update_impl(EmaState state, std::span<const T> weights) {
  if (!(state.decay >= 0.0 && state.decay < 1.0)) {
    throw ConfigError("EMA decay must lie in [0, 1)");
  }
  if (state.fresh()) {
    state.shadow.assign(weights.begin(), weights.end());
    state.step = 1;
    return state;
  }
  if (weights.size() != state.shadow.size()) {
    throw ShapeError("EMA expects " + std::to_string(state.shadow.size()) +
                     " parameters, got " + std::to_string(weights.size()));
  }
  const double keep = state.decay;
  const double take = 1.0 - state.decay;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    state.shadow[i] = keep * state.shadow[i] + take * static_cast<double>(weights[i]);
  }
  ++state.step;
  return state;
}

}  // namespace

EmaState ema_update(EmaState state, std::span<const double> weights) {
  return update_impl(std::move(state), weights);
}

EmaState ema_update(EmaState state, std::span<const float> weights) {
  return update_impl(std::move(state), weights);
}

}  // namespace longtail

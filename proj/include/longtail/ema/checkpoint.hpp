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

#ifndef LONGTAIL_EMA_CHECKPOINT_HPP_
#define LONGTAIL_EMA_CHECKPOINT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace longtail {

// Flat checkpoint layout, all little-endian:
//   bytes 0..7   magic "LTCKPT01"
//   bytes 8..15  parameter count (uint64)
//   then count IEEE-754 float32 values.
inline constexpr std::string_view kCheckpointMagic = "LTCKPT01";

std::string encode_checkpoint(std::span<const float> params);

// Throws ValidationError on a bad magic or a payload of the wrong size.
std::vector<float> decode_checkpoint(std::string_view bytes);

}  // namespace longtail

#endif  // LONGTAIL_EMA_CHECKPOINT_HPP_

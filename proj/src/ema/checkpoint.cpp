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

#include "longtail/ema/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

#include "longtail/common/error.hpp"

namespace longtail {

namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(std::string_view in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_checkpoint(std::span<const float> params) {
  std::string out(kCheckpointMagic);
  put_u64(out, params.size());
  out.reserve(out.size() + 4 * params.size());
  for (float f : params) {
    const auto bits = std::bit_cast<std::uint32_t>(f);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
  return out;
}

std::vector<float> decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < 16 || bytes.substr(0, 8) != kCheckpointMagic) {
    throw ValidationError("not a flat checkpoint (bad magic)");
  }
  const std::uint64_t count = get_u64(bytes, 8);
  if (count > (bytes.size() - 16) / 4 || bytes.size() - 16 != count * 4) {
    throw ValidationError("checkpoint payload size does not match its header");
  }
  std::vector<float> params(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint32_t bits = 0;
    for (int i = 0; i < 4; ++i) {
      bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[16 + 4 * k + i]))
              << (8 * i);
    }
    params[k] = std::bit_cast<float>(bits);
  }
  return params;
}

}  // namespace longtail

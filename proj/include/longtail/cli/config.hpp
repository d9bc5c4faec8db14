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

#ifndef LONGTAIL_CLI_CONFIG_HPP_
#define LONGTAIL_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longtail/cli/fixture.hpp"
#include "longtail/compositor/copy_paste.hpp"
#include "longtail/compositor/mosaic.hpp"
#include "longtail/eval/evaluate.hpp"
#include "longtail/rfs/rfs.hpp"
#include "longtail/ema/ema.hpp"
#include "longtail/seesaw/seesaw.hpp"
#include "longtail/tta/tta.hpp"

namespace longtail {

// Where mosaic draws its inputs from: the RFS epoch schedule or a plain
// seeded shuffle of the images.
enum class MosaicSource { kRfs, kUniform };

// Every tunable of the command-line tool. Defaults are the module defaults.
struct ToolConfig {
  std::optional<std::uint64_t> seed;
  double rfs_threshold = kDefaultRfsThreshold;
  PasteParams paste;
  MosaicParams mosaic;
  MosaicSource mosaic_source = MosaicSource::kRfs;
  SeesawConfig seesaw;  // class_counts unused here
  double ema_decay = kDefaultEmaDecay;
  EvalConfig eval;
  FuseConfig fuse;
  FixtureParams fixture;  // seed unused; the root seed applies

  bool operator==(const ToolConfig&) const = default;
};

// `key = value` lines with dotted keys ("eval.metric = boundary"); `#`
// starts a comment. Unknown keys, duplicate keys and bad values throw
// ConfigError naming the line.
ToolConfig parse_tool_config(std::string_view text);

// Canonical form: every key, one per line, in a fixed order.
std::string serialize_tool_config(const ToolConfig& cfg);

// All keys in canonical order.
std::vector<std::string> tool_config_keys();

void validate_tool_config(const ToolConfig& cfg);

}  // namespace longtail

#endif  // LONGTAIL_CLI_CONFIG_HPP_

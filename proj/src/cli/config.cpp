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

#include "longtail/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "longtail/common/error.hpp"

namespace longtail {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
T parse_number(const std::string& s) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ConfigError("'" + s + "' is not a valid number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ConfigError("'" + s + "' is not finite");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("'" + s + "' is not true or false");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_number<double>(trim(std::string_view(s).substr(start, end - start))));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt(v[i]);
  return out;
}

struct Key {
  const char* name;
  std::function<std::string(const ToolConfig&)> get;
  std::function<void(ToolConfig&, const std::string&)> set;
};

Key real(const char* name, double ToolConfig::*field) {
  return {name, [field](const ToolConfig& c) { return fmt(c.*field); },
          [field](ToolConfig& c, const std::string& v) { c.*field = parse_number<double>(v); }};
}

template <typename Group, typename T>
Key member(const char* name, Group ToolConfig::*group, T Group::*field) {
  return {name,
          [=](const ToolConfig& c) {
            if constexpr (std::is_same_v<T, bool>) {
              return std::string((c.*group).*field ? "true" : "false");
            } else if constexpr (std::is_floating_point_v<T>) {
              return fmt((c.*group).*field);
            } else {
              return std::to_string((c.*group).*field);
            }
          },
          [=](ToolConfig& c, const std::string& v) {
            if constexpr (std::is_same_v<T, bool>) {
              (c.*group).*field = parse_bool(v);
            } else {
              (c.*group).*field = parse_number<T>(v);
            }
          }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(real("rfs.threshold", &ToolConfig::rfs_threshold));

    k.push_back(member("paste.n_instances", &ToolConfig::paste, &PasteParams::n_instances));
    k.push_back({"paste.bucket_weights",
                 [](const ToolConfig& c) {
                   const auto& w = c.paste.bucket_weights;
                   return fmt_list({w.begin(), w.end()});
                 },
                 [](ToolConfig& c, const std::string& v) {
                   const auto w = parse_list(v);
                   if (w.size() != kNumBuckets) {
                     throw ConfigError("bucket_weights needs rare,common,frequent");
                   }
                   std::copy(w.begin(), w.end(), c.paste.bucket_weights.begin());
                 }});
    k.push_back(member("paste.scale_lo", &ToolConfig::paste, &PasteParams::scale_lo));
    k.push_back(member("paste.scale_hi", &ToolConfig::paste, &PasteParams::scale_hi));
    k.push_back(member("paste.hflip_prob", &ToolConfig::paste, &PasteParams::hflip_prob));
    k.push_back(member("paste.min_remaining_area_frac", &ToolConfig::paste,
                       &PasteParams::min_remaining_area_frac));

    k.push_back(member("mosaic.apply_prob", &ToolConfig::mosaic, &MosaicParams::apply_prob));
    k.push_back(member("mosaic.base_width", &ToolConfig::mosaic, &MosaicParams::base_width));
    k.push_back(member("mosaic.base_height", &ToolConfig::mosaic, &MosaicParams::base_height));
    k.push_back(
        member("mosaic.short_side_min", &ToolConfig::mosaic, &MosaicParams::short_side_min));
    k.push_back(
        member("mosaic.short_side_max", &ToolConfig::mosaic, &MosaicParams::short_side_max));
    k.push_back(member("mosaic.min_box_area", &ToolConfig::mosaic, &MosaicParams::min_box_area));
    k.push_back({"mosaic.source",
                 [](const ToolConfig& c) {
                   return std::string(c.mosaic_source == MosaicSource::kRfs ? "rfs" : "uniform");
                 },
                 [](ToolConfig& c, const std::string& v) {
                   if (v == "rfs") {
                     c.mosaic_source = MosaicSource::kRfs;
                   } else if (v == "uniform") {
                     c.mosaic_source = MosaicSource::kUniform;
                   } else {
                     throw ConfigError("mosaic.source must be rfs or uniform");
                   }
                 }});

    k.push_back(member("seesaw.p", &ToolConfig::seesaw, &SeesawConfig::p));
    k.push_back(member("seesaw.q", &ToolConfig::seesaw, &SeesawConfig::q));
    k.push_back(member("seesaw.eps", &ToolConfig::seesaw, &SeesawConfig::eps));

    k.push_back(real("ema.decay", &ToolConfig::ema_decay));

    k.push_back({"eval.iou_thresholds",
                 [](const ToolConfig& c) { return fmt_list(c.eval.iou_thresholds); },
                 [](ToolConfig& c, const std::string& v) { c.eval.iou_thresholds = parse_list(v); }});
    k.push_back({"eval.metric",
                 [](const ToolConfig& c) {
                   return std::string(c.eval.metric == MetricKind::kMaskIou ? "mask" : "boundary");
                 },
                 [](ToolConfig& c, const std::string& v) {
                   if (v == "mask") {
                     c.eval.metric = MetricKind::kMaskIou;
                   } else if (v == "boundary") {
                     c.eval.metric = MetricKind::kBoundaryIou;
                   } else {
                     throw ConfigError("eval.metric must be mask or boundary");
                   }
                 }});
    k.push_back(member("eval.boundary_dilation_frac", &ToolConfig::eval,
                       &EvalConfig::boundary_dilation_frac));
    k.push_back(member("eval.max_per_img", &ToolConfig::eval, &EvalConfig::max_per_img));
    k.push_back(member("eval.fixed_ap", &ToolConfig::eval, &EvalConfig::fixed_ap));
    k.push_back(member("eval.max_per_class_dataset", &ToolConfig::eval,
                       &EvalConfig::max_per_class_dataset));
    k.push_back({"eval.cap_order",
                 [](const ToolConfig& c) {
                   return std::string(c.eval.cap_order == CapOrder::kPerImageFirst
                                          ? "per_image_first"
                                          : "per_class_first");
                 },
                 [](ToolConfig& c, const std::string& v) {
                   if (v == "per_image_first") {
                     c.eval.cap_order = CapOrder::kPerImageFirst;
                   } else if (v == "per_class_first") {
                     c.eval.cap_order = CapOrder::kPerClassFirst;
                   } else {
                     throw ConfigError("eval.cap_order must be per_image_first or per_class_first");
                   }
                 }});

    k.push_back(member("fuse.nms_iou", &ToolConfig::fuse, &FuseConfig::nms_iou));
    k.push_back(member("fuse.mask_vote", &ToolConfig::fuse, &FuseConfig::mask_vote));
    k.push_back(member("fuse.vote_iou", &ToolConfig::fuse, &FuseConfig::vote_iou));

    k.push_back(member("fixture.categories", &ToolConfig::fixture, &FixtureParams::n_categories));
    k.push_back(member("fixture.zipf_s", &ToolConfig::fixture, &FixtureParams::zipf_s));
    k.push_back(member("fixture.images", &ToolConfig::fixture, &FixtureParams::n_images));
    return k;
  }();
  return table;
}

}  // namespace

std::vector<std::string> tool_config_keys() {
  std::vector<std::string> out = {"seed"};
  for (const auto& k : keys()) out.emplace_back(k.name);
  return out;
}

void validate_tool_config(const ToolConfig& cfg) {
  if (!(cfg.rfs_threshold > 0.0 && cfg.rfs_threshold <= 1.0)) {
    throw ConfigError("rfs.threshold must lie in (0, 1]");
  }
  validate_paste_params(cfg.paste);
  validate_mosaic_params(cfg.mosaic);
  if (!(cfg.seesaw.p >= 0.0) || !(cfg.seesaw.q >= 0.0) || !(cfg.seesaw.eps > 0.0)) {
    throw ConfigError("seesaw needs p >= 0, q >= 0, eps > 0");
  }
  if (!(cfg.ema_decay >= 0.0 && cfg.ema_decay < 1.0)) {
    throw ConfigError("ema.decay must lie in [0, 1)");
  }
  validate_config(cfg.eval);
  validate_fuse_config(cfg.fuse);
  if (cfg.fixture.n_categories < 3) throw ConfigError("fixture.categories must be >= 3");
  if (cfg.fixture.n_images < 1) throw ConfigError("fixture.images must be >= 1");
  if (!(cfg.fixture.zipf_s >= 0.0)) throw ConfigError("fixture.zipf_s must be >= 0");
}

ToolConfig parse_tool_config(std::string_view text) {
  std::map<std::string, const Key*> by_name;
  for (const auto& k : keys()) by_name[k.name] = &k;
  ToolConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value);
        continue;
      }
      const auto it = by_name.find(key);
      if (it == by_name.end()) throw ConfigError("unknown key '" + key + "'");
      it->second->set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  validate_tool_config(cfg);
  return cfg;
}

std::string serialize_tool_config(const ToolConfig& cfg) {
  std::string out;
  if (cfg.seed) out += "seed = " + std::to_string(*cfg.seed) + "\n";
  for (const auto& k : keys()) out += std::string(k.name) + " = " + k.get(cfg) + "\n";
  return out;
}

}  // namespace longtail

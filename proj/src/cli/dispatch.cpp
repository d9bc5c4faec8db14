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

#include "longtail/cli/dispatch.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>

#include <json.hpp>

#include "longtail/anno/stats.hpp"
#include "longtail/cli/config.hpp"
#include "longtail/cli/fixture.hpp"
#include "longtail/common/error.hpp"
#include "longtail/common/file_io.hpp"
#include "longtail/common/random.hpp"
#include "longtail/compositor/copy_paste.hpp"
#include "longtail/compositor/mosaic.hpp"
#include "longtail/compositor/sample.hpp"
#include "longtail/ema/checkpoint.hpp"
#include "longtail/ema/ema.hpp"
#include "longtail/ema/select.hpp"
#include "longtail/eval/evaluate.hpp"
#include "longtail/rfs/rfs.hpp"
#include "longtail/seesaw/seesaw.hpp"
#include "longtail/tta/tta.hpp"

namespace longtail {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string percent(const std::optional<double>& v) { return v ? percent(*v) : "n/a"; }

std::string numbered(const std::string& prefix, std::int64_t n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06lld.png", prefix.c_str(), static_cast<long long>(n));
  return buf;
}

std::uint64_t require_seed(const ToolConfig& cfg) {
  if (!cfg.seed) throw UsageError("this command is randomized and needs --seed");
  return *cfg.seed;
}

Dataset load_dataset(const std::string& path) { return parse_dataset(read_file(path)); }

// Looks for --config before CLI11 runs so file values become flag defaults.
std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// ---- stats -----------------------------------------------------------------

void run_stats(const std::string& gt, const std::string& sidecar, const std::string& report,
               std::ostream& out) {
  const Dataset ds = load_dataset(gt);
  const CategoryStats st = category_stats(ds);
  out << "images " << ds.images().size() << "  categories " << st.total_categories
      << "  instances " << st.total_instances << '\n';
  out << "bucket     categories  category%  instances  instance%\n";
  for (int b = 0; b < kNumBuckets; ++b) {
    char line[128];
    std::snprintf(line, sizeof line, "%-9s  %10lld  %9.3f  %9lld  %9.3f\n",
                  std::string(bucket_name(static_cast<Bucket>(b))).c_str(),
                  static_cast<long long>(st.categories_per_bucket[b]),
                  100.0 * st.category_fraction[b],
                  static_cast<long long>(st.instances_per_bucket[b]),
                  100.0 * st.instance_fraction[b]);
    out << line;
  }
  json j;
  j["images"] = ds.images().size();
  j["total_categories"] = st.total_categories;
  j["total_instances"] = st.total_instances;
  j["categories_per_bucket"] = st.categories_per_bucket;
  j["instances_per_bucket"] = st.instances_per_bucket;
  j["category_fraction"] = st.category_fraction;
  j["instance_fraction"] = st.instance_fraction;
  j["buckets"] = {"rare", "common", "frequent"};
  if (!sidecar.empty()) {
    const json truth = json::parse(read_file(sidecar));
    const bool match =
        truth.at("categories_per_bucket").get<std::vector<std::int64_t>>() ==
            std::vector<std::int64_t>(st.categories_per_bucket.begin(),
                                      st.categories_per_bucket.end()) &&
        truth.at("instances_per_bucket").get<std::vector<std::int64_t>>() ==
            std::vector<std::int64_t>(st.instances_per_bucket.begin(),
                                      st.instances_per_bucket.end()) &&
        truth.at("category_fraction").get<std::vector<double>>() ==
            std::vector<double>(st.category_fraction.begin(), st.category_fraction.end()) &&
        truth.at("instance_fraction").get<std::vector<double>>() ==
            std::vector<double>(st.instance_fraction.begin(), st.instance_fraction.end());
    j["sidecar_match"] = match;
    out << "sidecar " << (match ? "match" : "MISMATCH") << '\n';
    if (!report.empty()) write_file_atomic(report, j.dump(2));
    if (!match) throw ValidationError("statistics differ from the sidecar");
    return;
  }
  if (!report.empty()) write_file_atomic(report, j.dump(2));
}

// ---- rfs -------------------------------------------------------------------

void run_rfs(const ToolConfig& cfg, const std::string& gt, std::uint64_t epoch,
             const std::string& schedule_path, const std::string& factors_path,
             std::ostream& out) {
  const std::uint64_t seed = require_seed(cfg);
  const Dataset ds = load_dataset(gt);
  const RepeatFactors rf = compute_repeat_factors(ds, cfg.rfs_threshold);
  const EpochSchedule sched = build_epoch_schedule(rf, epoch, seed);
  write_file_atomic(schedule_path, schedule_to_json(sched));
  if (!factors_path.empty()) write_file_atomic(factors_path, repeat_factors_to_csv(rf));
  double expected = 0.0;
  for (const auto& [_, r] : rf.per_image) expected += r;
  out << "images " << rf.per_image.size() << "  schedule length " << sched.entries.size()
      << "  expected " << expected << '\n';
}

// ---- copypaste / mosaic ----------------------------------------------------

// Accumulates composed samples into one LVIS-style output.
class OutputWriter {
 public:
  OutputWriter(const Dataset& schema, fs::path dir) : schema_(schema), dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  void add(const Sample& s, const std::string& prefix) {
    const std::int64_t id = static_cast<std::int64_t>(images_.size()) + 1;
    const std::string name = numbered(prefix, id);
    write_png(dir_ / name, s.image);
    images_.push_back({id, s.image.width, s.image.height, name});
    for (const auto& inst : s.instances) {
      anns_.push_back({next_ann_++, id, inst.category_id, rle_encode(inst.mask), inst.bbox,
                       inst.area});
    }
  }

  std::size_t annotation_count() const { return anns_.size(); }

  void finish() {
    write_file_atomic(dir_ / "annotations.json",
                      serialize_dataset(Dataset(images_, schema_.categories(), anns_)));
  }

 private:
  const Dataset& schema_;
  fs::path dir_;
  std::vector<ImageRecord> images_;
  std::vector<AnnotationRecord> anns_;
  std::int64_t next_ann_ = 1;
};

void run_copypaste(const ToolConfig& cfg, const std::string& gt, const std::string& image_dir,
                   const std::string& out_dir, int count, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = require_seed(cfg);
  const Dataset ds = load_dataset(gt);
  if (ds.images().empty()) throw ValidationError("annotation file has no images");
  std::map<std::int64_t, std::int64_t> image_of_ann;
  for (const auto& a : ds.annotations()) image_of_ann[a.id] = a.image_id;

  OutputWriter writer(ds, out_dir);
  Rng pick(derive_seed(seed, 1));
  int pasted = 0;
  for (int i = 0; i < count; ++i) {
    const auto& rec = ds.images()[static_cast<std::size_t>(
        pick.uniform_int(0, static_cast<std::int64_t>(ds.images().size()) - 1))];
    const Sample target = load_sample(ds, rec.id, image_dir);
    const auto chosen = select_paste_instances(ds, cfg.paste, derive_seed(derive_seed(seed, 2), i));
    std::map<std::int64_t, Sample> cache;
    std::vector<PasteSource> sources;
    for (std::int64_t ann_id : chosen) {
      const std::int64_t img = image_of_ann.at(ann_id);
      auto it = cache.find(img);
      if (it == cache.end()) it = cache.emplace(img, load_sample(ds, img, image_dir)).first;
      const auto& insts = it->second.instances;
      const auto pos = std::find_if(insts.begin(), insts.end(),
                                    [&](const Instance& x) { return x.id == ann_id; });
      sources.push_back({&it->second, static_cast<std::size_t>(pos - insts.begin())});
    }
    const auto res =
        copy_paste(target, sources, cfg.paste, derive_seed(derive_seed(seed, 3), i));
    for (const auto& w : res.warnings) err << "warning: " << w << '\n';
    pasted += res.pasted;
    writer.add(res.sample, "copypaste");
  }
  writer.finish();
  out << "wrote " << count << " images, " << pasted << " pasted instances, "
      << writer.annotation_count() << " annotations\n";
}

void run_mosaic(const ToolConfig& cfg, const std::string& gt, const std::string& image_dir,
                const std::string& out_dir, int count, std::ostream& out) {
  const std::uint64_t seed = require_seed(cfg);
  const Dataset ds = load_dataset(gt);
  if (ds.images().empty()) throw ValidationError("annotation file has no images");

  // Image order: successive RFS epochs, or successive seeded shuffles.
  std::optional<RepeatFactors> rf;
  if (cfg.mosaic_source == MosaicSource::kRfs) rf = compute_repeat_factors(ds, cfg.rfs_threshold);
  std::vector<std::int64_t> order;
  std::size_t cursor = 0;
  std::uint64_t epoch = 0;
  const std::uint64_t order_seed = derive_seed(seed, 1);
  auto next_image = [&]() {
    while (cursor >= order.size()) {
      if (rf) {
        order = build_epoch_schedule(*rf, epoch, order_seed).entries;
      } else {
        order.clear();
        for (const auto& im : ds.images()) order.push_back(im.id);
        Rng rng(derive_seed(order_seed, epoch));
        rng.shuffle(std::span<std::int64_t>(order));
      }
      ++epoch;
      cursor = 0;
    }
    return order[cursor++];
  };
  MosaicStream stream([&]() { return load_sample(ds, next_image(), image_dir); }, cfg.mosaic,
                      derive_seed(seed, 2));
  OutputWriter writer(ds, out_dir);
  int mosaics = 0;
  for (int i = 0; i < count; ++i) {
    const StreamOutput o = stream.next();
    mosaics += o.mosaicked;
    writer.add(o.sample, o.mosaicked ? "mosaic" : "single");
  }
  writer.finish();
  out << "wrote " << count << " images (" << mosaics << " mosaics), "
      << writer.annotation_count() << " annotations\n";
}

// ---- seesaw / ema / select ---------------------------------------------------

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("'" + item + "' is not a number");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void run_ema(const ToolConfig& cfg, const std::vector<std::string>& inputs,
             const std::string& out_path, std::ostream& out) {
  EmaState state;
  state.decay = cfg.ema_decay;
  for (const auto& path : inputs) {
    const std::vector<float> w = decode_checkpoint(read_file(path));
    state = ema_update(std::move(state), std::span<const float>(w));
  }
  const std::vector<float> shadow(state.shadow.begin(), state.shadow.end());
  write_file_atomic(out_path, encode_checkpoint(shadow));
  out << "folded " << state.step << " checkpoints, " << shadow.size() << " parameters\n";
}

// ---- eval / tta ------------------------------------------------------------

void run_eval(const ToolConfig& cfg, const std::string& gt, const std::string& results,
              bool rescore_first, const std::string& report_path, std::ostream& out) {
  const Dataset ds = load_dataset(gt);
  std::vector<Detection> dets = parse_results(read_file(results));
  if (rescore_first) dets = rescore(std::move(dets));
  const EvalReport report = evaluate(ds, std::move(dets), cfg.eval);
  out << (cfg.eval.metric == MetricKind::kMaskIou ? "mask" : "boundary")
      << (cfg.eval.fixed_ap ? " fixed" : "") << " AP " << percent(report.ap) << "  APr "
      << percent(report.ap_r) << "  APc " << percent(report.ap_c) << "  APf "
      << percent(report.ap_f) << '\n';
  if (!report_path.empty()) write_file_atomic(report_path, report_to_json(report));
}

void run_tta(const ToolConfig& cfg, const std::string& gt, const std::string& views_path,
             const std::vector<std::string>& results, const std::string& out_path,
             std::ostream& out) {
  const Dataset ds = load_dataset(gt);
  const std::vector<TtaView> views = parse_views(read_file(views_path));
  if (views.size() != results.size()) {
    throw UsageError("got " + std::to_string(results.size()) + " results files for " +
                     std::to_string(views.size()) + " views");
  }
  std::vector<std::vector<Detection>> sets;
  std::size_t total = 0;
  for (std::size_t v = 0; v < views.size(); ++v) {
    std::map<std::int64_t, std::vector<Detection>> by_image;
    for (auto& d : parse_results(read_file(results[v]))) by_image[d.image_id].push_back(d);
    std::vector<Detection> mapped;
    for (auto& [image_id, dets] : by_image) {
      const auto& rec = ds.image(image_id);
      for (auto& d : unmap(std::move(dets), views[v], rec.width, rec.height)) {
        mapped.push_back(std::move(d));
      }
    }
    total += mapped.size();
    sets.push_back(std::move(mapped));
  }
  const auto fused = fuse(sets, cfg.fuse);
  write_file_atomic(out_path, serialize_results(fused));
  out << "fused " << total << " detections from " << views.size() << " views into "
      << fused.size() << '\n';
}

// ---- gen-fixture -----------------------------------------------------------

void run_gen_fixture(const ToolConfig& cfg, const std::string& out_path,
                     const std::string& sidecar_path, const std::string& image_dir,
                     std::ostream& out, std::ostream& err) {
  FixtureParams params = cfg.fixture;
  params.seed = require_seed(cfg);
  const Fixture fx = generate_fixture(params);
  for (const auto& w : fx.warnings) err << "warning: " << w << '\n';
  write_file_atomic(out_path, fx.annotations_json);
  if (!sidecar_path.empty()) write_file_atomic(sidecar_path, fx.sidecar_json);
  if (!image_dir.empty()) {
    const Dataset ds = parse_dataset(fx.annotations_json);
    fs::create_directories(image_dir);
    for (const auto& im : ds.images()) {
      write_png(fs::path(image_dir) / im.file_name, render_fixture_image(ds, im.id));
    }
  }
  out << "categories " << params.n_categories << "  images " << params.n_images
      << "  rare/common/frequent categories " << fx.truth.categories_per_bucket[0] << '/'
      << fx.truth.categories_per_bucket[1] << '/' << fx.truth.categories_per_bucket[2] << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ToolConfig cfg;
  try {
    if (const auto path = find_config_path(args)) cfg = parse_tool_config(read_file(*path));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  CLI::App app{"Long-tail instance segmentation toolkit"};
  app.name(args.empty() ? "longtail" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file; flags override it");
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::function<void()> action;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { cfg.seed = v; }, "Root random seed (required)");
  };

  // stats
  std::string gt, sidecar, report, out_path, image_dir, views_path, results_path, curve_path;
  auto* stats = app.add_subcommand("stats", "Per-bucket category and instance statistics");
  stats->add_option("--gt", gt, "Annotation JSON")->required();
  stats->add_option("--sidecar", sidecar, "Fixture sidecar to compare against exactly");
  stats->add_option("--report", report, "Write statistics JSON here");
  stats->callback([&] { action = [&] { run_stats(gt, sidecar, report, out); }; });

  // rfs
  std::uint64_t epoch = 0;
  std::string factors;
  auto* rfs = app.add_subcommand("rfs", "Repeat factors and one epoch schedule");
  rfs->add_option("--gt", gt, "Annotation JSON")->required();
  add_seed(rfs);
  rfs->add_option("--epoch", epoch, "Epoch index")->capture_default_str();
  rfs->add_option("--threshold", cfg.rfs_threshold, "Frequency threshold t")
      ->capture_default_str();
  rfs->add_option("--schedule", out_path, "Schedule JSON output")->required();
  rfs->add_option("--factors", factors, "Repeat factor CSV output");
  rfs->callback([&] { action = [&] { run_rfs(cfg, gt, epoch, out_path, factors, out); }; });

  // copypaste
  int count = 1;
  std::vector<double> weights;
  auto* cp = app.add_subcommand("copypaste", "Bucket-balanced copy-paste");
  cp->add_option("--gt", gt, "Annotation JSON")->required();
  cp->add_option("--images", image_dir, "Image directory")->required();
  cp->add_option("--out", out_path, "Output directory")->required();
  add_seed(cp);
  cp->add_option("--count", count, "Number of composed images")->capture_default_str();
  cp->add_option("--n-instances", cfg.paste.n_instances, "Instances pasted per image")
      ->capture_default_str();
  cp->add_option("--weights", weights, "Bucket weights rare,common,frequent")
      ->delimiter(',')
      ->expected(3);
  cp->add_option("--scale-lo", cfg.paste.scale_lo)->capture_default_str();
  cp->add_option("--scale-hi", cfg.paste.scale_hi)->capture_default_str();
  cp->add_option("--hflip-prob", cfg.paste.hflip_prob)->capture_default_str();
  cp->add_option("--min-remaining", cfg.paste.min_remaining_area_frac,
                 "Drop occluded instances keeping less than this fraction")
      ->capture_default_str();
  cp->callback([&] {
    if (!weights.empty()) std::copy(weights.begin(), weights.end(), cfg.paste.bucket_weights.begin());
    action = [&] { run_copypaste(cfg, gt, image_dir, out_path, count, out, err); };
  });

  // mosaic
  std::string preset, source;
  std::vector<int> base_size;
  auto* mo = app.add_subcommand("mosaic", "Four-image mosaic with probability apply_prob");
  mo->add_option("--gt", gt, "Annotation JSON")->required();
  mo->add_option("--images", image_dir, "Image directory")->required();
  mo->add_option("--out", out_path, "Output directory")->required();
  add_seed(mo);
  mo->add_option("--count", count, "Number of output images")->capture_default_str();
  mo->add_option("--preset", preset, "Short side range preset")
      ->check(CLI::IsMember({"400-1400", "640-1400"}));
  mo->add_option("--apply-prob", cfg.mosaic.apply_prob)->capture_default_str();
  mo->add_option("--base-size", base_size, "Base size W,H (canvas is 2W x 2H)")
      ->delimiter(',')
      ->expected(2);
  mo->add_option("--min-box-area", cfg.mosaic.min_box_area)->capture_default_str();
  mo->add_option("--source", source, "Input order: rfs or uniform")
      ->check(CLI::IsMember({"rfs", "uniform"}));
  mo->add_option("--threshold", cfg.rfs_threshold, "RFS threshold for --source rfs")
      ->capture_default_str();
  mo->callback([&] {
    if (!preset.empty()) {
      const MosaicParams p = mosaic_preset(preset);
      cfg.mosaic.short_side_min = p.short_side_min;
      cfg.mosaic.short_side_max = p.short_side_max;
    }
    if (!base_size.empty()) {
      cfg.mosaic.base_width = base_size[0];
      cfg.mosaic.base_height = base_size[1];
    }
    if (!source.empty()) {
      cfg.mosaic_source = source == "rfs" ? MosaicSource::kRfs : MosaicSource::kUniform;
    }
    action = [&] { run_mosaic(cfg, gt, image_dir, out_path, count, out); };
  });

  // seesaw
  int cases = 100, classes = 10;
  double step = 1e-5;
  std::string logits, counts;
  std::size_t label = 0;
  auto* ss = app.add_subcommand("seesaw", "Seesaw loss kernel");
  ss->require_subcommand(1);
  auto* gc = ss->add_subcommand("grad-check", "Finite-difference check of the gradient");
  add_seed(gc);
  gc->add_option("--cases", cases)->capture_default_str();
  gc->add_option("--classes", classes)->capture_default_str();
  gc->add_option("--step", step, "Central difference step")->capture_default_str();
  gc->callback([&] {
    action = [&] {
      const auto r = seesaw_grad_check(cases, classes, require_seed(cfg), step);
      out << "cases " << r.cases << "\nmax_relative_error " << r.max_relative_error << '\n';
    };
  });
  auto* sl = ss->add_subcommand("loss", "Loss and gradient for one sample");
  sl->add_option("--logits", logits, "Comma separated logits")->required();
  sl->add_option("--label", label, "True class index")->required();
  sl->add_option("--counts", counts, "Comma separated class counts")->required();
  sl->add_option("--p", cfg.seesaw.p)->capture_default_str();
  sl->add_option("--q", cfg.seesaw.q)->capture_default_str();
  sl->add_option("--eps", cfg.seesaw.eps)->capture_default_str();
  sl->callback([&] {
    action = [&] {
      SeesawConfig sc = cfg.seesaw;
      sc.class_counts = parse_csv_doubles(counts);
      const auto z = parse_csv_doubles(logits);
      const auto r = seesaw_loss(z, label, sc);
      out.precision(17);
      out << "loss " << r.loss << "\ngrad";
      for (double g : r.grad) out << ' ' << g;
      out << '\n';
    };
  });

  // ema
  std::vector<std::string> inputs;
  auto* em = app.add_subcommand("ema", "Fold checkpoints into an exponential moving average");
  em->add_option("checkpoints", inputs, "Checkpoint files in training order")->required();
  em->add_option("--out", out_path, "Output checkpoint")->required();
  em->add_option("--decay", cfg.ema_decay)->capture_default_str();
  em->callback([&] { action = [&] { run_ema(cfg, inputs, out_path, out); }; });

  // select
  std::string criterion = "max_ap";
  auto* se = app.add_subcommand("select", "Pick an epoch from a per-bucket AP curve");
  se->add_option("--curve", curve_path, "CSV with epoch,AP,APr,APc,APf")->required();
  se->add_option("--criterion", criterion, "max_ap, max_min_bucket or weighted:r,c,f")
      ->capture_default_str();
  se->callback([&] {
    action = [&] {
      const ApCurve curve = parse_ap_curve_csv(read_file(curve_path));
      const SelectionCriterion c = parse_criterion(criterion);
      out << "epoch " << select_epoch(curve, c) << '\n';
    };
  });

  // eval
  std::string metric, cap_order;
  bool fixed_ap = false, do_rescore = false;
  auto* ev = app.add_subcommand("eval", "Mask, boundary and fixed AP with bucket breakdown");
  ev->add_option("--gt", gt, "Ground-truth annotation JSON")->required();
  ev->add_option("--results", results_path, "Results JSON")->required();
  ev->add_option("--metric", metric, "mask or boundary")->check(CLI::IsMember({"mask", "boundary"}));
  ev->add_flag("--fixed-ap", fixed_ap, "Also cap detections per category over the dataset");
  ev->add_option("--max-per-img", cfg.eval.max_per_img)->capture_default_str();
  ev->add_option("--max-per-class", cfg.eval.max_per_class_dataset)->capture_default_str();
  ev->add_option("--boundary-frac", cfg.eval.boundary_dilation_frac,
                 "Boundary band width as a fraction of the image diagonal")
      ->capture_default_str();
  ev->add_option("--cap-order", cap_order)
      ->check(CLI::IsMember({"per_image_first", "per_class_first"}));
  ev->add_flag("--rescore", do_rescore, "Multiply scores by iou_pred first");
  ev->add_option("--report", report, "Write the report JSON here");
  ev->callback([&] {
    if (!metric.empty()) {
      cfg.eval.metric = metric == "mask" ? MetricKind::kMaskIou : MetricKind::kBoundaryIou;
    }
    if (fixed_ap) cfg.eval.fixed_ap = true;
    if (!cap_order.empty()) {
      cfg.eval.cap_order =
          cap_order == "per_image_first" ? CapOrder::kPerImageFirst : CapOrder::kPerClassFirst;
    }
    action = [&] { run_eval(cfg, gt, results_path, do_rescore, report, out); };
  });

  // tta-fuse
  std::vector<std::string> result_files;
  bool mask_vote = false;
  auto* tt = app.add_subcommand("tta-fuse", "Unmap per-view results and fuse them");
  tt->add_option("--gt", gt, "Annotation JSON (image extents)")->required();
  tt->add_option("--views", views_path, "Views manifest JSON [{w,h,hflip}]")->required();
  tt->add_option("--out", out_path, "Fused results JSON")->required();
  tt->add_option("results", result_files, "One results JSON per view, in view order")
      ->required();
  tt->add_option("--nms-iou", cfg.fuse.nms_iou)->capture_default_str();
  tt->add_flag("--mask-vote", mask_vote, "Score-weighted mask voting over each NMS cluster");
  tt->add_option("--vote-iou", cfg.fuse.vote_iou)->capture_default_str();
  tt->callback([&] {
    if (mask_vote) cfg.fuse.mask_vote = true;
    action = [&] { run_tta(cfg, gt, views_path, result_files, out_path, out); };
  });

  // gen-fixture
  auto* gf = app.add_subcommand("gen-fixture", "Synthetic Zipf long-tail annotation set");
  add_seed(gf);
  gf->add_option("--categories", cfg.fixture.n_categories)->capture_default_str();
  gf->add_option("--zipf", cfg.fixture.zipf_s, "Zipf exponent s")->capture_default_str();
  gf->add_option("--images", cfg.fixture.n_images)->capture_default_str();
  gf->add_option("--out", out_path, "Annotation JSON output")->required();
  gf->add_option("--sidecar", sidecar, "Ground-truth statistics JSON output");
  gf->add_option("--write-images", image_dir, "Also render PNGs into this directory");
  gf->callback([&] {
    action = [&] { run_gen_fixture(cfg, out_path, sidecar, image_dir, out, err); };
  });

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    validate_tool_config(cfg);
    if (action) action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace longtail

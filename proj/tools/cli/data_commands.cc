// Copyright 2026 The herodet Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bench, render-corpus, extract-samples, train-reference and print-config.

#include <iostream>
#include <memory>

#include "cli/commands.h"
#include "cli/common.h"
#include "herodet/dataset.h"
#include "herodet/evaluation.h"
#include "herodet/png_io.h"
#include "herodet/synth.h"

namespace herodet::cli {
namespace {

struct BenchArgs {
  std::string corpus;
  std::string output;
  double radius = 5.0;
  PipelineOptions pipeline;
};

int run_bench_command(const BenchArgs& args) {
  const PipelineConfig cfg = args.pipeline.resolve();
  const Detector detector = make_detector(cfg);
  const BenchReport r = run_bench(args.corpus, detector, args.radius);
  emit_json({{"schema", kSchemaVersion},
             {"command", "bench"},
             {"frames", r.frames},
             {"precision", r.precision},
             {"recall", r.recall},
             {"true_positives", r.true_positives},
             {"false_positives", r.false_positives},
             {"false_negatives", r.false_negatives},
             {"match_radius", r.match_radius},
             {"max_center_error", r.max_center_error},
             {"latency_ms",
              {{"mean", r.latency.mean_ms},
               {"p50", r.latency.p50_ms},
               {"p90", r.latency.p90_ms},
               {"p99", r.latency.p99_ms},
               {"max", r.latency.max_ms}}}},
            args.output);
  return 0;
}

struct RenderArgs {
  std::string out;
  std::vector<std::string> dims;
  std::string self_label;
  synth::CorpusOptions options;
};

Size parse_dims(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x != std::string::npos) {
      size_t used = 0;
      const int w = std::stoi(s.substr(0, x), &used);
      if (used == x) {
        const std::string rest = s.substr(x + 1);
        const int h = std::stoi(rest, &used);
        if (used == rest.size() && w > 0 && h > 0) return {w, h};
      }
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("bad frame size '" + s + "' (expected WxH)");
}

int run_render_corpus(RenderArgs& args) {
  if (!args.dims.empty()) {
    args.options.dims.clear();
    for (const std::string& d : args.dims) {
      args.options.dims.push_back(parse_dims(d));
    }
  }
  if (!args.self_label.empty()) args.options.scene.self_label = args.self_label;
  if (args.options.scene.min_bars < 0 ||
      args.options.scene.min_bars > args.options.scene.max_bars) {
    throw std::invalid_argument("need 0 <= --min-bars <= --max-bars");
  }
  const synth::Manifest m = synth::render_corpus(args.out, args.options);
  size_t bars = 0;
  for (const auto& f : m.frames) bars += f.truth.bars.size();
  emit_json({{"schema", kSchemaVersion},
             {"command", "render-corpus"},
             {"frames", m.frames.size()},
             {"bars", bars},
             {"manifest", (std::filesystem::path(args.out) / "manifest.json")
                              .string()}},
            "");
  return 0;
}

struct ExtractArgs {
  std::vector<std::string> inputs;
  std::string label;
  std::string out;
  std::string output;
  PipelineOptions pipeline;
};

int run_extract(const ExtractArgs& args) {
  const PipelineConfig cfg = args.pipeline.resolve();
  const Detector detector = make_detector(cfg);
  const auto all = expand_inputs(args.inputs);
  if (all.empty()) throw std::runtime_error("no input frames");
  std::vector<std::filesystem::path> sampled;
  for (size_t i = 0; i < all.size(); i += cfg.stride) sampled.push_back(all[i]);

  ExtractOptions opts;
  opts.center_width = cfg.center_width;
  opts.center_height = cfg.center_height;
  opts.circles = cfg.recognition.circles;
  opts.jobs = args.pipeline.jobs;
  const ExtractResult r =
      extract_leading_samples(detector, sampled, args.label, args.out, opts);
  for (const std::string& w : r.warnings) {
    std::cerr << "herodet extract-samples: warning: " << w << "\n";
  }
  save_samples_manifest(args.out, r.records);

  nlohmann::json counts = {{"appearance", 0}, {"skill_region", 0},
                           {"first_skill", 0}};
  for (const SampleRecord& s : r.records) {
    counts[std::string(roi_name(s.roi))] =
        counts[std::string(roi_name(s.roi))].get<int>() + 1;
  }
  emit_json({{"schema", kSchemaVersion},
             {"command", "extract-samples"},
             {"label", args.label},
             {"frames_total", all.size()},
             {"frames_sampled", sampled.size()},
             {"samples", counts},
             {"warnings", r.warnings}},
            args.output);
  return 0;
}

struct TrainArgs {
  std::string samples;
  std::string roi = "appearance";
  std::string model;
  std::string output;
  double train_fraction = 0.8;
  uint64_t seed = 1;
  double temperature = ReferenceClassifier::kDefaultTemperature;
};

int run_train(const TrainArgs& args) {
  const auto roi = parse_roi(args.roi);
  if (!roi) throw std::invalid_argument("unknown roi type '" + args.roi + "'");
  std::vector<SampleRecord> records;
  for (SampleRecord& r : load_samples_manifest(args.samples)) {
    if (r.roi == *roi) records.push_back(std::move(r));
  }
  if (records.empty()) {
    throw std::runtime_error("no " + args.roi + " samples in " + args.samples);
  }
  Split split;
  if (args.train_fraction >= 1.0) {
    split.train = records;
  } else {
    split = split_corpus(records, args.train_fraction, args.seed);
  }
  for (const std::string& w : split.warnings) {
    std::cerr << "herodet train-reference: warning: " << w << "\n";
  }
  auto load = [&](const std::vector<SampleRecord>& list) {
    std::vector<LabeledCrop> crops;
    crops.reserve(list.size());
    for (const SampleRecord& r : list) {
      crops.push_back(
          {r.label, read_png(std::filesystem::path(args.samples) / r.file)});
    }
    return crops;
  };
  const std::vector<LabeledCrop> train = load(split.train);
  ReferenceClassifier model = train_reference(train, {}, args.temperature);
  model.save(args.model);

  nlohmann::json doc = {{"schema", kSchemaVersion},
                        {"command", "train-reference"},
                        {"roi_type", args.roi},
                        {"model", args.model},
                        {"labels", model.labels()},
                        {"train", split.train.size()},
                        {"test", split.test.size()}};
  if (!split.test.empty()) {
    int correct = 0;
    for (const LabeledCrop& c : load(split.test)) {
      const Prediction p = model.classify(c.image);
      if (!p.empty() && p.front().label == c.label) ++correct;
    }
    doc["test_accuracy"] = static_cast<double>(correct) / split.test.size();
  } else {
    doc["test_accuracy"] = nullptr;
  }
  emit_json(doc, args.output);
  return 0;
}

}  // namespace

void add_data_commands(CLI::App& root, std::vector<Command>& out) {
  {
    auto args = std::make_shared<BenchArgs>();
    auto* app = root.add_subcommand(
        "bench", "score detection against a rendered corpus manifest");
    app->add_option("corpus", args->corpus, "corpus directory")->required();
    app->add_option("--radius", args->radius,
                    "maximum center distance of a match, in pixels");
    app->add_option("-o,--output", args->output, "output file (default stdout)");
    args->pipeline.attach(*app);
    out.push_back({app, [args] { return run_bench_command(*args); }});
  }
  {
    auto args = std::make_shared<RenderArgs>();
    auto* app = root.add_subcommand(
        "render-corpus", "render synthetic frames with ground truth");
    app->add_option("out", args->out, "output directory")->required();
    app->add_option("--count,-n", args->options.count, "number of frames")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", args->options.seed, "RNG seed");
    app->add_option("--dims", args->dims,
                    "frame sizes drawn uniformly, e.g. 1280x720 960x720")
        ->delimiter(',');
    app->add_option("--min-bars", args->options.scene.min_bars);
    app->add_option("--max-bars", args->options.scene.max_bars)
        ->check(CLI::Range(0, 10));
    app->add_option("--self-probability", args->options.scene.self_probability)
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--empty-probability",
                    args->options.scene.empty_probability)
        ->check(CLI::Range(0.0, 1.0));
    app->add_flag("--empty-only", args->options.scene.empty_bars_only,
                  "draw every bar fully depleted");
    app->add_option("--self-label", args->self_label,
                    "fixed leading-hero label, as in one player's video");
    app->add_option("--jobs,-j", args->options.jobs, "worker threads")
        ->check(CLI::PositiveNumber);
    out.push_back({app, [args] { return run_render_corpus(*args); }});
  }
  {
    auto args = std::make_shared<ExtractArgs>();
    auto* app = root.add_subcommand(
        "extract-samples",
        "write auto-labelled leading-hero crops from one labelled video");
    app->add_option("frames", args->inputs, "PNG frames or directories")
        ->required();
    app->add_option("--label", args->label, "hero shown in the video")
        ->required();
    app->add_option("--out", args->out, "sample root directory")->required();
    app->add_option("-o,--output", args->output, "summary file (default stdout)");
    args->pipeline.attach(*app);
    app->add_option_function<std::string>(
        "--every-n-frames",
        [args](const std::string& v) {
          args->pipeline.overrides["sampling.stride"] = v;
        },
        "process every n-th frame (same as --sampling.stride)");
    out.push_back({app, [args] { return run_extract(*args); }});
  }
  {
    auto args = std::make_shared<TrainArgs>();
    auto* app = root.add_subcommand(
        "train-reference",
        "train a nearest-centroid model from extracted samples");
    app->add_option("samples", args->samples, "sample root directory")
        ->required();
    app->add_option("--roi", args->roi,
                    "appearance, skill_region or first_skill");
    app->add_option("--model", args->model, "output model file")->required();
    app->add_option("--train-fraction", args->train_fraction,
                    "stratified train share; 1 trains on everything")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--seed", args->seed, "split seed");
    app->add_option("--temperature", args->temperature,
                    "softmax temperature of the model")
        ->check(CLI::PositiveNumber);
    app->add_option("-o,--output", args->output, "summary file (default stdout)");
    out.push_back({app, [args] { return run_train(*args); }});
  }
  {
    auto pipeline = std::make_shared<PipelineOptions>();
    auto* app = root.add_subcommand(
        "print-config", "print the resolved configuration as a config file");
    pipeline->attach(*app);
    out.push_back({app, [pipeline] {
                     std::cout << dump_config(pipeline->resolve());
                     return 0;
                   }});
  }
}

}  // namespace herodet::cli

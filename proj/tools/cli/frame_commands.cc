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

// detect, recognize, video-summary and overlay.

#include <cmath>
#include <fstream>
#include <memory>

#include "cli/commands.h"
#include "cli/common.h"
#include "herodet/png_io.h"

namespace herodet::cli {
namespace {

struct FrameArgs {
  std::vector<std::string> inputs;
  std::string output;
  PipelineOptions pipeline;
};

std::vector<std::filesystem::path> require_frames(const FrameArgs& args) {
  auto frames = expand_inputs(args.inputs);
  if (frames.empty()) throw std::runtime_error("no input frames");
  return frames;
}

nlohmann::json frame_header(const std::filesystem::path& path,
                            const Image& source, double scale) {
  return {{"path", path.string()},
          {"width", source.width()},
          {"height", source.height()},
          {"scale", scale}};
}

int run_detect(const FrameArgs& args) {
  const PipelineConfig cfg = args.pipeline.resolve();
  const Detector detector = make_detector(cfg);
  const auto frames = require_frames(args);
  std::vector<nlohmann::json> results(frames.size());
  parallel_for(frames.size(), args.pipeline.jobs, [&](size_t i) {
    const Image source = read_png(frames[i]);
    const NormalizedFrame nf = normalize_height(source);
    nlohmann::json f = frame_header(frames[i], source, nf.scale);
    nlohmann::json dets = nlohmann::json::array();
    for (const Detection& d : detector.detect(nf.image)) {
      dets.push_back(detection_json(d, nf.scale));
    }
    f["detections"] = std::move(dets);
    results[i] = std::move(f);
  });
  emit_json({{"schema", kSchemaVersion},
             {"command", "detect"},
             {"frames", results}},
            args.output);
  return 0;
}

int run_recognize(const FrameArgs& args) {
  const PipelineConfig cfg = args.pipeline.resolve();
  const Detector detector = make_detector(cfg);
  const ClassifierSet classifiers = make_classifiers(cfg);
  const auto frames = require_frames(args);
  std::vector<nlohmann::json> results(frames.size());
  parallel_for(frames.size(), args.pipeline.jobs, [&](size_t i) {
    const Image source = read_png(frames[i]);
    const NormalizedFrame nf = normalize_height(source);
    const auto dets = detector.detect(nf.image);
    nlohmann::json f = frame_header(frames[i], source, nf.scale);
    nlohmann::json heroes = nlohmann::json::array();
    for (const HeroRecognition& hr :
         recognize_frame(nf.image, dets, classifiers, cfg.recognition)) {
      heroes.push_back(recognition_json(hr, nf.scale));
    }
    f["heroes"] = std::move(heroes);
    results[i] = std::move(f);
  });
  emit_json({{"schema", kSchemaVersion},
             {"command", "recognize"},
             {"frames", results}},
            args.output);
  return 0;
}

struct VideoArgs {
  std::string dir;
  std::string output;
  PipelineOptions pipeline;
};

int run_video_summary(const VideoArgs& args) {
  const PipelineConfig cfg = args.pipeline.resolve();
  if (!std::filesystem::is_directory(args.dir)) {
    throw std::runtime_error(args.dir + " is not a directory");
  }
  const auto all = list_frames(args.dir);
  if (all.empty()) throw std::runtime_error("no frames in " + args.dir);
  std::vector<std::filesystem::path> sampled;
  for (size_t i = 0; i < all.size(); i += cfg.stride) sampled.push_back(all[i]);

  const Detector detector = make_detector(cfg);
  const ClassifierSet classifiers = make_classifiers(cfg);
  std::vector<VideoAccumulator> partial(sampled.size());
  parallel_for(sampled.size(), args.pipeline.jobs, [&](size_t i) {
    const NormalizedFrame nf = normalize_height(read_png(sampled[i]));
    const auto dets = detector.detect(nf.image);
    partial[i].add_frame(
        recognize_frame(nf.image, dets, classifiers, cfg.recognition));
  });
  VideoAccumulator total;
  for (const VideoAccumulator& p : partial) total.merge(p);
  const VideoSummary summary = total.summary();

  nlohmann::json camps = nlohmann::json::object();
  for (Camp c : {Camp::kSelf, Camp::kFriend, Camp::kEnemy, Camp::kUnknown}) {
    nlohmann::json list = nlohmann::json::array();
    if (const auto it = summary.camps.find(c); it != summary.camps.end()) {
      for (const HeroTally& t : it->second) {
        list.push_back({{"label", t.label},
                        {"confidence", t.confidence},
                        {"frames", t.frames}});
      }
    }
    camps[std::string(camp_name(c))] = std::move(list);
  }
  emit_json({{"schema", kSchemaVersion},
             {"command", "video-summary"},
             {"frames_total", all.size()},
             {"frames_processed", sampled.size()},
             {"stride", cfg.stride},
             {"camps", camps}},
            args.output);
  return 0;
}

struct OverlayArgs {
  std::string frame;
  std::string detections;
  std::string output;
  int index = -1;
  int thickness = 2;
};

Rgb overlay_color(Camp camp) {
  switch (camp) {
    case Camp::kSelf:
      return {0, 255, 0};
    case Camp::kFriend:
      return {0, 0, 255};
    case Camp::kEnemy:
      return {255, 0, 0};
    case Camp::kUnknown:
      return {128, 128, 128};
  }
  return {128, 128, 128};
}

// Outline drawn just outside the box so the bar itself stays visible.
void draw_box(Image& img, const BoxF& b, int thickness, Rgb color) {
  const int x0 = static_cast<int>(std::lround(b.x));
  const int y0 = static_cast<int>(std::lround(b.y));
  const int x1 = static_cast<int>(std::lround(b.x + b.w));
  const int y1 = static_cast<int>(std::lround(b.y + b.h));
  const Rect outer{x0 - thickness, y0 - thickness, x1 - x0 + 2 * thickness,
                   y1 - y0 + 2 * thickness};
  img.fill_rect({outer.x, outer.y, outer.w, thickness}, color);
  img.fill_rect({outer.x, y1, outer.w, thickness}, color);
  img.fill_rect({outer.x, outer.y, thickness, outer.h}, color);
  img.fill_rect({x1, outer.y, thickness, outer.h}, color);
}

int run_overlay(const OverlayArgs& args) {
  Image img = read_png(args.frame);
  if (img.channels() == 1) {
    Image rgb(img.width(), img.height(), 3);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const uint8_t v = img.at(x, y);
        rgb.set_rgb(x, y, {v, v, v});
      }
    }
    img = std::move(rgb);
  }
  std::ifstream in(args.detections);
  if (!in) throw std::runtime_error("cannot read " + args.detections);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed detections JSON: " +
                             std::string(e.what()));
  }
  const auto& frames = doc.at("frames");
  if (frames.empty()) throw std::runtime_error("detections JSON has no frames");
  size_t idx = 0;
  if (args.index >= 0) {
    idx = static_cast<size_t>(args.index);
    if (idx >= frames.size()) throw std::runtime_error("--index out of range");
  } else if (frames.size() > 1) {
    bool found = false;
    for (size_t i = 0; i < frames.size() && !found; ++i) {
      if (frames[i].value("path", "") == args.frame) {
        idx = i;
        found = true;
      }
    }
    if (!found) {
      throw std::runtime_error(
          "several frames in detections JSON; none matches the frame path "
          "(use --index)");
    }
  }
  const auto& f = frames[idx];
  if (f.at("width").get<int>() != img.width() ||
      f.at("height").get<int>() != img.height()) {
    throw std::runtime_error("frame is " + std::to_string(img.width()) + "x" +
                             std::to_string(img.height()) +
                             " but the detections describe " +
                             std::to_string(f.at("width").get<int>()) + "x" +
                             std::to_string(f.at("height").get<int>()));
  }
  const auto& items = f.contains("heroes") ? f.at("heroes") : f.at("detections");
  for (const auto& d : items) {
    const auto camp = parse_camp(d.at("camp").get<std::string>());
    if (!camp) throw std::runtime_error("unknown camp in detections JSON");
    const auto& b = d.at("bbox");
    draw_box(img,
             {b.at("x").get<double>(), b.at("y").get<double>(),
              b.at("w").get<double>(), b.at("h").get<double>()},
             args.thickness, overlay_color(*camp));
  }
  write_png(args.output, img);
  return 0;
}

}  // namespace

void add_frame_commands(CLI::App& root, std::vector<Command>& out) {
  {
    auto args = std::make_shared<FrameArgs>();
    auto* app = root.add_subcommand(
        "detect", "detect blood bars and camps; JSON in source coordinates");
    app->add_option("frames", args->inputs, "PNG frames or directories")
        ->required();
    app->add_option("-o,--output", args->output, "output file (default stdout)");
    args->pipeline.attach(*app);
    out.push_back({app, [args] { return run_detect(*args); }});
  }
  {
    auto args = std::make_shared<FrameArgs>();
    auto* app = root.add_subcommand(
        "recognize", "detect and recognize heroes with the configured classifiers");
    app->add_option("frames", args->inputs, "PNG frames or directories")
        ->required();
    app->add_option("-o,--output", args->output, "output file (default stdout)");
    args->pipeline.attach(*app);
    out.push_back({app, [args] { return run_recognize(*args); }});
  }
  {
    auto args = std::make_shared<VideoArgs>();
    auto* app = root.add_subcommand(
        "video-summary",
        "accumulate recognitions over a directory of ordered video frames");
    app->add_option("dir", args->dir, "directory of PNG frames")->required();
    app->add_option("-o,--output", args->output, "output file (default stdout)");
    args->pipeline.attach(*app);
    app->add_option_function<std::string>(
        "--stride",
        [args](const std::string& v) {
          args->pipeline.overrides["sampling.stride"] = v;
        },
        "process every n-th frame (same as --sampling.stride)");
    out.push_back({app, [args] { return run_video_summary(*args); }});
  }
  {
    auto args = std::make_shared<OverlayArgs>();
    auto* app = root.add_subcommand(
        "overlay", "draw camp-colored boxes from detect/recognize JSON");
    app->add_option("frame", args->frame, "source PNG frame")->required();
    app->add_option("detections", args->detections, "detect or recognize JSON")
        ->required();
    app->add_option("-o,--output", args->output, "output PNG")->required();
    app->add_option("--index", args->index,
                    "frame entry to draw (default: entry matching the path)");
    app->add_option("--thickness", args->thickness, "box line width")
        ->check(CLI::Range(1, 16));
    out.push_back({app, [args] { return run_overlay(*args); }});
  }
}

}  // namespace herodet::cli

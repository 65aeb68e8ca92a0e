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

#include "herodet/dataset.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "herodet/png_io.h"
#include "json.hpp"

namespace herodet {
namespace {

constexpr char kManifestName[] = "samples_manifest.json";

void write_atomic(const std::filesystem::path& path, const Image& img) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  write_png(tmp, img);
  std::filesystem::rename(tmp, path);
}

struct FrameSamples {
  std::vector<SampleRecord> records;
  std::string warning;
};

FrameSamples process_frame(const Detector& detector,
                           const std::filesystem::path& path,
                           const std::string& label,
                           const std::filesystem::path& out_dir,
                           const ExtractOptions& options) {
  FrameSamples out;
  Image source;
  try {
    source = read_png(path);
  } catch (const std::exception& e) {
    out.warning = "skipping " + path.string() + ": " + e.what();
    return out;
  }
  const NormalizedFrame nf = normalize_height(source);
  const Image& frame = nf.image;
  const Size size = frame.size();

  const Detection* leading = nullptr;
  const std::vector<Detection> dets = detector.detect(frame);
  for (const Detection& d : dets) {
    if (d.camp != Camp::kSelf ||
        !in_central_window(d, size, options.center_width,
                           options.center_height)) {
      continue;
    }
    if (leading == nullptr || d.score > leading->score) leading = &d;
  }
  if (leading == nullptr) return out;

  const std::string frame_id = path.stem().string();
  auto emit = [&](RoiType roi, const Rect& rect, const Image& img) {
    SampleRecord r;
    r.roi = roi;
    r.label = label;
    r.frame_id = frame_id;
    r.crop = rect;
    r.file = label + "/" + std::string(roi_name(roi)) + "/" + frame_id + ".png";
    write_atomic(out_dir / r.file, img);
    out.records.push_back(std::move(r));
  };

  const Rect app = appearance_rect(leading->bar.x, leading->bar.y,
                                   {leading->bar.w, leading->bar.h}, size);
  const CropResult app_crop = crop(frame, app);
  if (app_crop.image.size() == Size{kAppearanceSize, kAppearanceSize}) {
    emit(RoiType::kAppearance, app, app_crop.image);
  }

  const Rect region = skill_region_rect(size);
  const CropResult skill = crop(frame, region);
  if (skill.image.size() != Size{kSkillRegionSize, kSkillRegionSize}) {
    return out;
  }
  emit(RoiType::kSkillRegion, region, skill.image);

  const Rect search = first_skill_search_area(skill.image.size());
  std::vector<Circle> circles = detect_circles(
      to_grayscale(crop(skill.image, search).image), options.circles);
  for (Circle& c : circles) {
    c.cx += search.x;
    c.cy += search.y;
  }
  if (const auto first = first_skill_rect(skill.image.size(), circles)) {
    const CropResult fc = crop(skill.image, *first);
    if (fc.image.size() == Size{kFirstSkillSize, kFirstSkillSize}) {
      emit(RoiType::kFirstSkill,
           {first->x + region.x, first->y + region.y, first->w, first->h},
           fc.image);
    }
  }
  return out;
}

nlohmann::json record_json(const SampleRecord& r) {
  return {{"roi_type", roi_name(r.roi)},
          {"label", r.label},
          {"frame_id", r.frame_id},
          {"file", r.file},
          {"crop", {{"x", r.crop.x}, {"y", r.crop.y}, {"w", r.crop.w},
                    {"h", r.crop.h}}}};
}

uint64_t label_hash(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

bool in_central_window(const Detection& det, Size frame, double width_fraction,
                       double height_fraction) {
  const double half_w = frame.width * width_fraction / 2.0;
  const double half_h = frame.height * height_fraction / 2.0;
  return std::abs(det.center_x() - frame.width / 2.0) <= half_w &&
         std::abs(det.center_y() - frame.height / 2.0) <= half_h;
}

ExtractResult extract_leading_samples(
    const Detector& detector, std::span<const std::filesystem::path> frames,
    const std::string& label, const std::filesystem::path& out_dir,
    const ExtractOptions& options) {
  if (label.empty() || label.find_first_of("/\\") != std::string::npos ||
      label == "." || label == "..") {
    throw std::invalid_argument("invalid sample label '" + label + "'");
  }
  std::vector<FrameSamples> per_frame(frames.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < frames.size(); i = next++) {
      per_frame[i] = process_frame(detector, frames[i], label, out_dir, options);
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExtractResult result;
  for (FrameSamples& f : per_frame) {
    if (!f.warning.empty()) result.warnings.push_back(std::move(f.warning));
    for (SampleRecord& r : f.records) result.records.push_back(std::move(r));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              return a.file < b.file;
            });
  return result;
}

void save_samples_manifest(const std::filesystem::path& root,
                           std::span<const SampleRecord> records) {
  std::map<std::string, SampleRecord> merged;
  if (std::filesystem::exists(root / kManifestName)) {
    for (SampleRecord& r : load_samples_manifest(root)) {
      merged[r.file] = std::move(r);
    }
  }
  for (const SampleRecord& r : records) merged[r.file] = r;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& [file, r] : merged) samples.push_back(record_json(r));
  const nlohmann::json doc = {{"schema", 1}, {"samples", samples}};
  std::filesystem::create_directories(root);
  const auto path = root / kManifestName;
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << doc.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::vector<SampleRecord> load_samples_manifest(
    const std::filesystem::path& root) {
  const auto path = root / kManifestName;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<SampleRecord> out;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("schema").get<int>() != 1) {
      throw std::runtime_error("unsupported schema in " + path.string());
    }
    for (const auto& s : doc.at("samples")) {
      const auto roi = parse_roi(s.at("roi_type").get<std::string>());
      if (!roi) throw std::runtime_error("unknown roi_type in " + path.string());
      const auto& c = s.at("crop");
      out.push_back({*roi, s.at("label").get<std::string>(),
                     s.at("frame_id").get<std::string>(),
                     Rect{c.at("x").get<int>(), c.at("y").get<int>(),
                          c.at("w").get<int>(), c.at("h").get<int>()},
                     s.at("file").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed " + path.string() + ": " + e.what());
  }
  return out;
}

Split split_corpus(std::span<const SampleRecord> records, double train_fraction,
                   uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("no records to split");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  std::map<std::string, std::vector<SampleRecord>> by_label;
  for (const SampleRecord& r : records) by_label[r.label].push_back(r);

  Split out;
  for (auto& [label, group] : by_label) {
    // Canonical order first, so the shuffle ignores input order.
    std::sort(group.begin(), group.end(),
              [](const SampleRecord& a, const SampleRecord& b) {
                return std::tie(a.file, a.frame_id) < std::tie(b.file, b.frame_id);
              });
    const size_t n = group.size();
    if (n < 2) {
      out.warnings.push_back("label '" + label +
                             "' has fewer than 2 records; all go to train");
      out.train.insert(out.train.end(), group.begin(), group.end());
      continue;
    }
    std::mt19937_64 rng(seed ^ label_hash(label));
    for (size_t i = n - 1; i > 0; --i) {
      std::swap(group[i], group[rng() % (i + 1)]);
    }
    const auto k = std::clamp<size_t>(
        static_cast<size_t>(std::llround(train_fraction * n)), 1, n - 1);
    out.train.insert(out.train.end(), group.begin(), group.begin() + k);
    out.test.insert(out.test.end(), group.begin() + k, group.end());
  }
  return out;
}

}  // namespace herodet

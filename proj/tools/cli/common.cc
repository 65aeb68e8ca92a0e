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

#include "cli/common.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace herodet::cli {

void PipelineOptions::attach(CLI::App& app) {
  app.add_option("--config", config_file, "flat key = value config file")
      ->check(CLI::ExistingFile);
  app.add_option("--jobs,-j", jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  auto* group = app.add_option_group("Pipeline", "per-key config overrides");
  for (const ConfigKey& key : config_keys()) {
    const std::string name = key.name;
    group->add_option_function<std::string>(
        "--" + name,
        [this, name](const std::string& v) { overrides[name] = v; }, key.help);
  }
}

PipelineConfig PipelineOptions::resolve() const {
  PipelineConfig cfg =
      config_file.empty() ? PipelineConfig{} : load_config(config_file);
  for (const auto& [key, value] : overrides) set_config_value(cfg, key, value);
  validate_config(cfg);
  return cfg;
}

std::vector<std::filesystem::path> list_frames(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::filesystem::path> expand_inputs(
    const std::vector<std::string>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const std::string& in : inputs) {
    if (std::filesystem::is_directory(in)) {
      for (auto& p : list_frames(in)) out.push_back(std::move(p));
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  const size_t threads = std::min<size_t>(std::max(1, jobs), std::max<size_t>(n, 1));
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

nlohmann::json box_json(const BoxF& b) {
  return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}};
}

nlohmann::json rect_json(const Rect& r, double scale) {
  return box_json(to_source(r, scale));
}

nlohmann::json prediction_json(const Prediction& p, size_t limit) {
  nlohmann::json out = nlohmann::json::array();
  for (size_t i = 0; i < p.size() && i < limit; ++i) {
    out.push_back({{"label", p[i].label}, {"confidence", p[i].confidence}});
  }
  return out;
}

nlohmann::json detection_json(const Detection& d, double scale) {
  return {{"bbox", rect_json(d.bar, scale)},
          {"camp", camp_name(d.camp)},
          {"score", d.score},
          {"value", d.value}};
}

nlohmann::json recognition_json(const HeroRecognition& hr, double scale) {
  nlohmann::json j = detection_json(hr.detection, scale);
  j["appearance_rect"] = rect_json(hr.appearance_rect, scale);
  j["label"] = hr.result.label;
  j["confidence"] = hr.result.confidence;
  j["source"] = source_name(hr.result.source);
  if (hr.leading) {
    const LeadingDetail& l = *hr.leading;
    nlohmann::json lead;
    lead["skill_region"] = rect_json(l.skill_region, scale);
    lead["first_skill"] =
        l.first_skill ? rect_json(*l.first_skill, scale) : nlohmann::json();
    if (l.first_skill_circle) {
      const Circle& c = *l.first_skill_circle;
      lead["first_skill_circle"] = {
          {"cx", c.cx / scale}, {"cy", c.cy / scale}, {"r", c.r / scale}};
    } else {
      lead["first_skill_circle"] = nullptr;
    }
    lead["appearance"] = prediction_json(l.appearance);
    lead["skill_region_prediction"] =
        l.skill ? prediction_json(*l.skill) : nlohmann::json();
    lead["first_skill_prediction"] =
        l.first ? prediction_json(*l.first) : nlohmann::json();
    j["leading"] = std::move(lead);
  }
  return j;
}

void emit_json(const nlohmann::json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace herodet::cli

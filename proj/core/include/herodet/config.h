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

#ifndef HERODET_CONFIG_H_
#define HERODET_CONFIG_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "herodet/classifier.h"
#include "herodet/detector.h"
#include "herodet/recognition.h"

namespace herodet {

struct PipelineConfig {
  // Empty paths select the built-in template.
  std::string template_image;
  std::string template_mask;
  DetectorParams detector;
  RecognitionParams recognition;

  // Reference-classifier model files, one per ROI type.
  std::string appearance_model;
  std::string skill_region_model;
  std::string first_skill_model;
  // Shell command of an external classifier; overrides the model files.
  std::string external_classifier;

  int stride = 10;  // video sampling: every n-th frame
  // Central window the leading hero must sit in during sample extraction,
  // as fractions of the frame width and height.
  double center_width = 0.5;
  double center_height = 0.6;
};

struct ConfigKey {
  std::string name;  // dotted, e.g. "nms.t_x"
  std::string help;
  std::function<std::string(const PipelineConfig&)> get;
  // Throws std::invalid_argument on malformed values.
  std::function<void(PipelineConfig&, std::string_view)> set;
};

// Every recognized key, in documentation order.
const std::vector<ConfigKey>& config_keys();

// Throws std::invalid_argument for unknown keys or bad values.
void set_config_value(PipelineConfig& cfg, std::string_view key,
                      std::string_view value);
std::string get_config_value(const PipelineConfig& cfg, std::string_view key);

// Parses `key = value` lines on top of `base`. '#' starts a comment; values
// may be double-quoted. Errors carry the line number.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig base = {});
// One `key = value` line per key; parse_config(dump_config(c)) == c.
std::string dump_config(const PipelineConfig& cfg);

// Throws std::invalid_argument naming the first out-of-range key.
void validate_config(const PipelineConfig& cfg);

BloodBarTemplate load_template(const PipelineConfig& cfg);
Detector make_detector(const PipelineConfig& cfg);

// Builds the classifier stack the config names. Throws std::runtime_error
// when no appearance classifier is configured or a model fails to load.
ClassifierSet make_classifiers(const PipelineConfig& cfg);

}  // namespace herodet

#endif  // HERODET_CONFIG_H_

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

#include "herodet/config.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace herodet {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("bad value for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  }
  return out;
}

std::string format(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

// `access` is a generic lambda returning a reference to the field, usable
// on both const and mutable configs.
template <typename Access>
ConfigKey real_key(std::string name, std::string help, Access access) {
  return {name, std::move(help),
          [access](const PipelineConfig& c) { return format(access(c)); },
          [name, access](PipelineConfig& c, std::string_view v) {
            access(c) = parse_number<double>(name, v);
          }};
}

template <typename Access>
ConfigKey int_key(std::string name, std::string help, Access access) {
  return {name, std::move(help),
          [access](const PipelineConfig& c) {
            return std::to_string(access(c));
          },
          [name, access](PipelineConfig& c, std::string_view v) {
            access(c) = parse_number<int>(name, v);
          }};
}

template <typename Access>
ConfigKey string_key(std::string name, std::string help, Access access) {
  return {std::move(name), std::move(help),
          [access](const PipelineConfig& c) { return access(c); },
          [access](PipelineConfig& c, std::string_view v) {
            access(c) = std::string(v);
          }};
}

#define HERODET_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

std::vector<ConfigKey> build_keys() {
  std::vector<ConfigKey> k;
  k.push_back(string_key("template.image",
                         "blood-bar template PNG (empty: built-in)",
                         HERODET_FIELD(template_image)));
  k.push_back(string_key("template.mask",
                         "template mask PNG, 0 or 255 per pixel",
                         HERODET_FIELD(template_mask)));
  k.push_back(real_key("score.alpha", "weight of the peak match value",
                       HERODET_FIELD(detector.score.alpha)));
  k.push_back(real_key("score.beta", "weight of the peak contrast term",
                       HERODET_FIELD(detector.score.beta)));
  k.push_back(int_key("score.radius", "maximum-filter radius in pixels",
                      HERODET_FIELD(detector.score.radius)));
  k.push_back(int_key("score.top_k", "local maxima kept for scoring",
                      HERODET_FIELD(detector.score.top_k)));
  k.push_back(real_key("score.threshold", "minimum peak score of a bar",
                       HERODET_FIELD(detector.score.score_threshold)));
  k.push_back(
      {"nms.t_x", "horizontal suppression distance (auto: template width / 2)",
       [](const PipelineConfig& c) {
         return c.detector.nms_t_x ? std::to_string(*c.detector.nms_t_x)
                                   : std::string("auto");
       },
       [](PipelineConfig& c, std::string_view v) {
         if (v == "auto") {
           c.detector.nms_t_x.reset();
         } else {
           c.detector.nms_t_x = parse_number<int>("nms.t_x", v);
         }
       }});
  k.push_back(int_key("nms.t_y", "vertical suppression distance",
                      HERODET_FIELD(detector.nms_t_y)));
  k.push_back(int_key("camp.strip_width",
                      "width of the left-end color sampling strip",
                      HERODET_FIELD(detector.camp_strip_width)));
  k.push_back(real_key("recognition.fuse_threshold",
                       "minimum fused confidence for the leading hero",
                       HERODET_FIELD(recognition.fuse_threshold)));
  k.push_back(real_key("recognition.appearance_threshold",
                       "minimum appearance confidence for other heroes",
                       HERODET_FIELD(recognition.appearance_threshold)));
  k.push_back(int_key("circles.r_min", "smallest first-skill radius",
                      HERODET_FIELD(recognition.circles.r_min)));
  k.push_back(int_key("circles.r_max", "largest first-skill radius",
                      HERODET_FIELD(recognition.circles.r_max)));
  k.push_back(real_key("circles.edge_threshold", "Sobel edge magnitude",
                       HERODET_FIELD(recognition.circles.edge_threshold)));
  k.push_back(real_key("circles.support_fraction",
                       "circumference fraction backing a radius",
                       HERODET_FIELD(recognition.circles.support_fraction)));
  k.push_back(string_key("classifier.appearance_model",
                         "reference model for appearance crops",
                         HERODET_FIELD(appearance_model)));
  k.push_back(string_key("classifier.skill_region_model",
                         "reference model for skill-region crops",
                         HERODET_FIELD(skill_region_model)));
  k.push_back(string_key("classifier.first_skill_model",
                         "reference model for first-skill crops",
                         HERODET_FIELD(first_skill_model)));
  k.push_back(string_key("classifier.external",
                         "external classifier command (line JSON protocol)",
                         HERODET_FIELD(external_classifier)));
  k.push_back(int_key("sampling.stride", "process every n-th video frame",
                      HERODET_FIELD(stride)));
  k.push_back(real_key("dataset.center_width",
                       "central window width fraction for sample extraction",
                       HERODET_FIELD(center_width)));
  k.push_back(real_key("dataset.center_height",
                       "central window height fraction for sample extraction",
                       HERODET_FIELD(center_height)));
  return k;
}

#undef HERODET_FIELD

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_keys();
  return keys;
}

void set_config_value(PipelineConfig& cfg, std::string_view key,
                      std::string_view value) {
  for (const ConfigKey& k : config_keys()) {
    if (k.name == key) {
      k.set(cfg, value);
      return;
    }
  }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

std::string get_config_value(const PipelineConfig& cfg, std::string_view key) {
  for (const ConfigKey& k : config_keys()) {
    if (k.name == key) return k.get(cfg);
  }
  throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      set_config_value(base, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path,
                           PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), std::move(base));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string dump_config(const PipelineConfig& cfg) {
  std::string out;
  for (const ConfigKey& k : config_keys()) {
    const std::string v = k.get(cfg);
    const bool quote = v.empty() || v.find_first_of("# \t=") != std::string::npos;
    out += k.name + " = " + (quote ? "\"" + v + "\"" : v) + "\n";
  }
  return out;
}

void validate_config(const PipelineConfig& cfg) {
  cfg.detector.score.validate();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(!cfg.detector.nms_t_x || *cfg.detector.nms_t_x >= 0,
          "nms.t_x must be >= 0");
  require(cfg.detector.nms_t_y >= 0, "nms.t_y must be >= 0");
  require(cfg.detector.camp_strip_width >= 1, "camp.strip_width must be >= 1");
  const RecognitionParams& r = cfg.recognition;
  require(r.fuse_threshold >= 0.0 && r.fuse_threshold <= 1.0,
          "recognition.fuse_threshold must lie in [0, 1]");
  require(r.appearance_threshold >= 0.0 && r.appearance_threshold <= 1.0,
          "recognition.appearance_threshold must lie in [0, 1]");
  require(r.circles.r_min >= 1 && r.circles.r_min < r.circles.r_max,
          "circles.r_min and circles.r_max must satisfy 1 <= r_min < r_max");
  require(r.circles.edge_threshold > 0.0, "circles.edge_threshold must be > 0");
  require(r.circles.support_fraction > 0.0 && r.circles.support_fraction <= 1.0,
          "circles.support_fraction must lie in (0, 1]");
  require(cfg.stride >= 1, "sampling.stride must be >= 1");
  require(cfg.center_width > 0.0 && cfg.center_width <= 1.0,
          "dataset.center_width must lie in (0, 1]");
  require(cfg.center_height > 0.0 && cfg.center_height <= 1.0,
          "dataset.center_height must lie in (0, 1]");
}

BloodBarTemplate load_template(const PipelineConfig& cfg) {
  if (cfg.template_image.empty() != cfg.template_mask.empty()) {
    throw std::invalid_argument(
        "template.image and template.mask must be set together");
  }
  if (cfg.template_image.empty()) return BloodBarTemplate::standard();
  return BloodBarTemplate::load(cfg.template_image, cfg.template_mask);
}

Detector make_detector(const PipelineConfig& cfg) {
  return Detector(load_template(cfg), cfg.detector);
}

ClassifierSet make_classifiers(const PipelineConfig& cfg) {
  if (!cfg.external_classifier.empty()) {
    auto bridge = std::make_shared<ExternalBridge>(cfg.external_classifier);
    return ClassifierSet(
        std::make_shared<ExternalClassifier>(bridge, RoiType::kAppearance),
        std::make_shared<ExternalClassifier>(bridge, RoiType::kSkillRegion),
        std::make_shared<ExternalClassifier>(bridge, RoiType::kFirstSkill));
  }
  if (cfg.appearance_model.empty()) {
    throw std::runtime_error(
        "no classifier configured: set classifier.appearance_model or "
        "classifier.external");
  }
  auto load = [](const std::string& path) -> std::shared_ptr<Classifier> {
    if (path.empty()) return nullptr;
    return std::make_shared<ReferenceClassifier>(
        ReferenceClassifier::load(path));
  };
  return ClassifierSet(load(cfg.appearance_model), load(cfg.skill_region_model),
                       load(cfg.first_skill_model));
}

}  // namespace herodet

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

#ifndef HERODET_TOOLS_CLI_COMMON_H_
#define HERODET_TOOLS_CLI_COMMON_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "herodet/config.h"
#include "herodet/detector.h"
#include "herodet/recognition.h"
#include "json.hpp"

namespace herodet::cli {

inline constexpr int kSchemaVersion = 1;

// Pipeline options shared by every subcommand: `--config FILE`, `--jobs N`
// and one `--<key> VALUE` flag per config key. Flags override the file.
struct PipelineOptions {
  std::string config_file;
  int jobs = 1;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App& app);
  PipelineConfig resolve() const;
};

// Expands directories into their image files in lexicographic order; plain
// files are kept as given.
std::vector<std::filesystem::path> expand_inputs(
    const std::vector<std::string>& inputs);
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

// Runs fn(i) for i in [0, n) on `jobs` threads. The first exception thrown
// by any call is rethrown after all workers stop.
void parallel_for(size_t n, int jobs, const std::function<void(size_t)>& fn);

nlohmann::json box_json(const BoxF& b);
nlohmann::json rect_json(const Rect& r, double scale);
nlohmann::json prediction_json(const Prediction& p, size_t limit = 5);

// One frame's detections in source coordinates.
nlohmann::json detection_json(const Detection& d, double scale);
nlohmann::json recognition_json(const HeroRecognition& hr, double scale);

// Writes `doc` to `path`, or to standard output when `path` is empty or "-".
void emit_json(const nlohmann::json& doc, const std::string& path);

}  // namespace herodet::cli

#endif  // HERODET_TOOLS_CLI_COMMON_H_

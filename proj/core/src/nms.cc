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

#include "herodet/nms.h"

#include <cstdlib>
#include <stdexcept>

namespace herodet {

std::vector<PeakCandidate> suppress(std::span<const PeakCandidate> candidates,
                                    const NmsParams& params) {
  if (params.t_x < 0 || params.t_y < 0) {
    throw std::invalid_argument("NMS thresholds must be non-negative");
  }
  for (size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].score > candidates[i - 1].score) {
      throw std::invalid_argument(
          "NMS input must be sorted by descending score");
    }
  }
  std::vector<bool> live(candidates.size(), true);
  for (size_t i = 1; i < candidates.size(); ++i) {
    for (size_t j = 0; j < i && live[i]; ++j) {
      if (live[j] &&
          std::abs(candidates[j].y - candidates[i].y) < params.t_y &&
          std::abs(candidates[j].x - candidates[i].x) < params.t_x) {
        live[i] = false;
      }
    }
  }
  std::vector<PeakCandidate> kept;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!live[i]) continue;
    kept.push_back(candidates[i]);
    kept.back().is_real_detection = true;
  }
  return kept;
}

}  // namespace herodet

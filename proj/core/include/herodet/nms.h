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

#ifndef HERODET_NMS_H_
#define HERODET_NMS_H_

#include <span>
#include <vector>

#include "herodet/template_match.h"

namespace herodet {

struct NmsParams {
  int t_x = 33;  // half the template width
  int t_y = 1;

  static NmsParams for_template(Size template_size) {
    return {template_size.width / 2, 1};
  }
};

// Suppresses matches that sit within (t_x, t_y) of a higher-scored match
// that is itself still live. Comparisons are strict, and a candidate only
// ever checks against earlier survivors, so two near-duplicates can both
// live when the one between them was already suppressed.
//
// `candidates` must be sorted by descending score; throws
// std::invalid_argument otherwise. Returns survivors in input order with
// is_real_detection set.
std::vector<PeakCandidate> suppress(std::span<const PeakCandidate> candidates,
                                    const NmsParams& params);

}  // namespace herodet

#endif  // HERODET_NMS_H_

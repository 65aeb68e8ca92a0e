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

#include "herodet/template_match.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "herodet/png_io.h"

namespace herodet {
namespace {

// Per-placement sums are accumulated in uint32. N * 255^2 must fit.
constexpr int kMaxMaskPixels = 66000;

Rect find_fill_region(const Image& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<int> label(static_cast<size_t>(w) * h, -1);
  Rect best;
  int next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (mask.at(x0, y0) != 0 || label[y0 * w + x0] >= 0) continue;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0;
      bool touches_border = false;
      stack.assign(1, {x0, y0});
      label[y0 * w + x0] = next;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        if (x == 0 || y == 0 || x == w - 1 || y == h - 1) {
          touches_border = true;
        }
        const int dx[] = {1, -1, 0, 0};
        const int dy[] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = x + dx[k];
          const int ny = y + dy[k];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (mask.at(nx, ny) != 0 || label[ny * w + nx] >= 0) continue;
          label[ny * w + nx] = next;
          stack.push_back({nx, ny});
        }
      }
      ++next;
      if (touches_border) continue;
      const Rect r{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
      if (r.w > best.w) best = r;
    }
  }
  return best;
}

// Maximal horizontal segment of used template pixels [x0, x1) on one row.
// `value` is meaningful only for constant-value runs.
struct Run {
  int row;
  int x0;
  int x1;
  uint32_t value;
};

}  // namespace

const BarLayout& standard_bar_layout() {
  static const BarLayout layout;
  return layout;
}

BloodBarTemplate::BloodBarTemplate(Image image, Image mask)
    : image_(to_grayscale(image)) {
  if (mask.empty() || image_.size() != mask.size()) {
    throw std::invalid_argument("template and mask dimensions differ");
  }
  mask = to_grayscale(mask);
  mask_ = Image(mask.width(), mask.height(), 1);
  for (size_t i = 0; i < mask.pixels().size(); ++i) {
    const bool on = mask.pixels()[i] != 0;
    mask_.pixels()[i] = on ? 255 : 0;
    mask_count_ += on ? 1 : 0;
  }
  if (mask_count_ == 0) {
    throw std::invalid_argument("template mask selects no pixels");
  }
  if (mask_count_ > kMaxMaskPixels) {
    throw std::invalid_argument("template mask too large: " +
                                std::to_string(mask_count_) + " pixels");
  }
  fill_region_ = find_fill_region(mask_);
}

BloodBarTemplate BloodBarTemplate::standard() {
  const BarLayout& l = standard_bar_layout();
  Image image(l.size.width, l.size.height, 1);
  Image mask(l.size.width, l.size.height, 1);
  const int w = l.size.width;
  const int h = l.size.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      uint8_t v = l.frame;
      if (x == 0 || x == w - 1 || y == 0 || y == h - 1) {
        v = l.outline;
      } else if (x == l.level_box.right()) {
        v = l.outline;  // separator, dark half
      }
      image.at(x, y) = v;
      mask.at(x, y) = 255;
    }
  }
  for (const Rect& hole : {l.level_box, l.fill}) {
    for (int y = hole.y; y < hole.bottom(); ++y) {
      for (int x = hole.x; x < hole.right(); ++x) {
        image.at(x, y) = l.empty_fill;
        mask.at(x, y) = 0;
      }
    }
  }
  return BloodBarTemplate(std::move(image), std::move(mask));
}

BloodBarTemplate BloodBarTemplate::load(const std::filesystem::path& image_path,
                                        const std::filesystem::path& mask_path) {
  return BloodBarTemplate(read_png(image_path), read_png(mask_path));
}

void ScoreParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0)) {
    throw std::invalid_argument(
        "score weights must be non-negative with a positive sum");
  }
  if (radius < 1) throw std::invalid_argument("score radius must be >= 1");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  if (!std::isfinite(score_threshold)) {
    throw std::invalid_argument("score threshold must be finite");
  }
}

MatchMap masked_match(const Image& gray_frame, const BloodBarTemplate& tmpl) {
  if (gray_frame.channels() != 1) {
    throw std::invalid_argument("masked_match expects a grayscale frame");
  }
  const int fw = gray_frame.width();
  const int fh = gray_frame.height();
  const int tw = tmpl.width();
  const int th = tmpl.height();
  if (fw < tw || fh < th) {
    throw std::invalid_argument("frame " + std::to_string(fw) + "x" +
                                std::to_string(fh) +
                                " is smaller than the template");
  }
  const int out_w = fw - tw + 1;
  const int out_h = fh - th + 1;

  // Value runs: used pixels of equal gray, for the cross term and plain sum.
  // Mask runs: used pixels regardless of gray, for the sum of squares.
  std::vector<Run> value_runs;
  std::vector<Run> mask_runs;
  int64_t n = 0, sum_t = 0, sum_tt = 0;
  for (int y = 0; y < th; ++y) {
    int x = 0;
    while (x < tw) {
      if (!tmpl.used(x, y)) {
        ++x;
        continue;
      }
      int end = x;
      while (end < tw && tmpl.used(end, y)) ++end;
      mask_runs.push_back({y, x, end, 0});
      for (int s = x; s < end;) {
        const uint8_t v = tmpl.image().at(s, y);
        int e = s;
        while (e < end && tmpl.image().at(e, y) == v) ++e;
        value_runs.push_back({y, s, e, v});
        n += e - s;
        sum_t += static_cast<int64_t>(v) * (e - s);
        sum_tt += static_cast<int64_t>(v) * v * (e - s);
        s = e;
      }
      x = end;
    }
  }
  const double var_t = static_cast<double>(n * sum_tt - sum_t * sum_t);

  // Row prefix sums of F and F^2. Differences are taken modulo 2^32, which
  // is exact because every true run sum fits in 32 bits.
  const size_t stride = static_cast<size_t>(fw) + 1;
  std::vector<uint32_t> p1(stride * fh), p2(stride * fh);
  for (int y = 0; y < fh; ++y) {
    const auto row = gray_frame.row(y);
    uint32_t* r1 = &p1[y * stride];
    uint32_t* r2 = &p2[y * stride];
    r1[0] = r2[0] = 0;
    for (int x = 0; x < fw; ++x) {
      const uint32_t v = row[x];
      r1[x + 1] = r1[x] + v;
      r2[x + 1] = r2[x] + v * v;
    }
  }

  MatchMap out(out_w, out_h);
  std::vector<uint32_t> acc_s(out_w), acc_ss(out_w), acc_tf(out_w);
  if (var_t <= 0.0) return out;
  for (int y = 0; y < out_h; ++y) {
    std::fill(acc_s.begin(), acc_s.end(), 0u);
    std::fill(acc_ss.begin(), acc_ss.end(), 0u);
    std::fill(acc_tf.begin(), acc_tf.end(), 0u);
    for (const Run& run : value_runs) {
      const uint32_t* lo = &p1[(y + run.row) * stride + run.x0];
      const uint32_t* hi = &p1[(y + run.row) * stride + run.x1];
      const uint32_t v = run.value;
      for (int x = 0; x < out_w; ++x) {
        const uint32_t s = hi[x] - lo[x];
        acc_s[x] += s;
        acc_tf[x] += v * s;
      }
    }
    for (const Run& run : mask_runs) {
      const uint32_t* lo = &p2[(y + run.row) * stride + run.x0];
      const uint32_t* hi = &p2[(y + run.row) * stride + run.x1];
      for (int x = 0; x < out_w; ++x) acc_ss[x] += hi[x] - lo[x];
    }
    float* dst = &out.values()[static_cast<size_t>(y) * out_w];
    for (int x = 0; x < out_w; ++x) {
      const int64_t s = acc_s[x];
      const int64_t var_f = n * static_cast<int64_t>(acc_ss[x]) - s * s;
      if (var_f <= 0) {
        dst[x] = 0.0f;
        continue;
      }
      const int64_t num = n * static_cast<int64_t>(acc_tf[x]) - sum_t * s;
      const double ncc =
          static_cast<double>(num) / std::sqrt(static_cast<double>(var_f) * var_t);
      dst[x] = static_cast<float>(std::clamp(ncc, -1.0, 1.0));
    }
  }
  return out;
}

std::vector<PeakCandidate> find_local_maxima(const MatchMap& map, int radius) {
  const MatchMap dilated = maximum_filter(map, radius);
  std::vector<PeakCandidate> peaks;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const float v = map.at(x, y);
      if (v == dilated.at(x, y)) peaks.push_back({x, y, v, 0.0, true});
    }
  }
  return peaks;
}

double peak_score(const MatchMap& map, int x, int y, int radius, double alpha,
                  double beta) {
  const double v0 = map.at(x, y);
  const int x0 = std::max(0, x - radius);
  const int x1 = std::min(map.width() - 1, x + radius);
  const int y0 = std::max(0, y - radius);
  const int y1 = std::min(map.height() - 1, y + radius);
  double contrast = 0.0;
  int n = 0;
  for (int yy = y0; yy <= y1; ++yy) {
    for (int xx = x0; xx <= x1; ++xx) {
      if (xx == x && yy == y) continue;
      contrast += v0 - map.at(xx, yy);
      ++n;
    }
  }
  if (n > 0) contrast /= n;
  return alpha * v0 + beta * contrast;
}

std::vector<PeakCandidate> rank_and_score(const MatchMap& map,
                                          std::vector<PeakCandidate> candidates,
                                          const ScoreParams& params) {
  params.validate();
  auto by_value = [](const PeakCandidate& a, const PeakCandidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  };
  const size_t keep =
      std::min(candidates.size(), static_cast<size_t>(params.top_k));
  std::partial_sort(candidates.begin(), candidates.begin() + keep,
                    candidates.end(), by_value);
  candidates.resize(keep);
  for (PeakCandidate& c : candidates) {
    c.score = peak_score(map, c.x, c.y, params.radius, params.alpha,
                         params.beta);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const PeakCandidate& a, const PeakCandidate& b) {
                     return a.score > b.score;
                   });
  return candidates;
}

std::vector<PeakCandidate> threshold_candidates(
    std::span<const PeakCandidate> candidates, const ScoreParams& params) {
  std::vector<PeakCandidate> kept;
  for (const PeakCandidate& c : candidates) {
    if (c.score >= params.score_threshold) kept.push_back(c);
  }
  return kept;
}

}  // namespace herodet

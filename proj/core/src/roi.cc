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

#include "herodet/roi.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace herodet {

Rect shift_inside(Rect rect, Size frame) {
  rect.w = std::min(rect.w, frame.width);
  rect.h = std::min(rect.h, frame.height);
  rect.x = std::clamp(rect.x, 0, frame.width - rect.w);
  rect.y = std::clamp(rect.y, 0, frame.height - rect.h);
  return rect;
}

Rect appearance_rect(int bar_x, int bar_y, Size bar_size, Size frame) {
  const int center_x = bar_x + bar_size.width / 2;
  const Rect r{center_x - kAppearanceSize / 2,
               bar_y + bar_size.height + kAppearanceGap, kAppearanceSize,
               kAppearanceSize};
  return shift_inside(r, frame);
}

RectF skill_region_exact(Size frame) {
  const double w = frame.width;
  const double h = frame.height;
  const double w_norm = h * 16.0 / 9.0;
  return {0.5 * w + 0.1875 * w_norm, 0.475 * h, 0.5 * h, 0.5 * h};
}

Rect skill_region_rect(Size frame) {
  const RectF f = skill_region_exact(frame);
  const Rect r{static_cast<int>(std::lround(f.x)),
               static_cast<int>(std::lround(f.y)),
               static_cast<int>(std::lround(f.w)),
               static_cast<int>(std::lround(f.h))};
  return shift_inside(r, frame);
}

Rect first_skill_search_area(Size skill_region) {
  const int half_w = skill_region.width / 2;
  const int half_h = skill_region.height / 2;
  return {0, half_h, half_w, skill_region.height - half_h};
}

std::optional<Rect> first_skill_rect(Size skill_region,
                                     const std::vector<Circle>& circles) {
  if (circles.empty()) return std::nullopt;
  const auto largest = std::max_element(
      circles.begin(), circles.end(),
      [](const Circle& a, const Circle& b) { return a.r < b.r; });
  const int cx = static_cast<int>(std::lround(largest->cx));
  const int cy = static_cast<int>(std::lround(largest->cy));
  const Rect r{cx - kFirstSkillSize / 2, cy - kFirstSkillSize / 2,
               kFirstSkillSize, kFirstSkillSize};
  return shift_inside(r, skill_region);
}

namespace {

struct Edge {
  int x;
  int y;
  float dx;  // unit gradient
  float dy;
};

std::vector<Edge> thinned_edges(const Image& gray, double threshold) {
  const int w = gray.width();
  const int h = gray.height();
  std::vector<float> gx(static_cast<size_t>(w) * h), gy(gx.size()),
      mag(gx.size());
  auto px = [&](int x, int y) -> int {
    return gray.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int sx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const int sy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const size_t i = static_cast<size_t>(y) * w + x;
      gx[i] = static_cast<float>(sx);
      gy[i] = static_cast<float>(sy);
      mag[i] = std::hypot(gx[i], gy[i]);
    }
  }
  std::vector<Edge> edges;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const size_t i = static_cast<size_t>(y) * w + x;
      const float m = mag[i];
      if (m < threshold) continue;
      // Quantize the gradient to one of four neighbor axes for thinning.
      const float ax = std::abs(gx[i]);
      const float ay = std::abs(gy[i]);
      int ox, oy;
      if (ay <= 0.4142f * ax) {
        ox = 1, oy = 0;
      } else if (ax <= 0.4142f * ay) {
        ox = 0, oy = 1;
      } else {
        ox = 1, oy = (gx[i] * gy[i] > 0) ? 1 : -1;
      }
      const float before = mag[(y - oy) * w + (x - ox)];
      const float after = mag[(y + oy) * w + (x + ox)];
      if (m < before || m <= after) continue;
      edges.push_back({x, y, gx[i] / m, gy[i] / m});
    }
  }
  return edges;
}

// Least-squares fit of x^2 + y^2 + D x + E y + F = 0. Updates the circle
// and returns false when the points are too few or degenerate.
bool fit_circle(const std::vector<const Edge*>& pts, double& cx, double& cy,
                double& r) {
  if (pts.size() < 8) return false;
  // Centered coordinates keep the normal equations well conditioned.
  const double ox = cx, oy = cy;
  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, n = 0;
  double sxz = 0, syz = 0, sz = 0;
  for (const Edge* e : pts) {
    const double x = e->x - ox, y = e->y - oy, z = x * x + y * y;
    sxx += x * x, sxy += x * y, syy += y * y, sx += x, sy += y, n += 1;
    sxz += x * z, syz += y * z, sz += z;
  }
  // [sxx sxy sx; sxy syy sy; sx sy n] [D E F]^T = -[sxz syz sz]^T
  const double a[3][3] = {{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, n}};
  const double b[3] = {-sxz, -syz, -sz};
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double det = det3(a);
  if (std::abs(det) < 1e-9) return false;
  double sol[3];
  for (int k = 0; k < 3; ++k) {
    double m[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] = j == k ? b[i] : a[i][j];
    }
    sol[k] = det3(m) / det;
  }
  const double fx = -sol[0] / 2, fy = -sol[1] / 2;
  const double rr = fx * fx + fy * fy - sol[2];
  if (!(rr > 0)) return false;
  cx = ox + fx;
  cy = oy + fy;
  r = std::sqrt(rr);
  return true;
}

}  // namespace

std::vector<Circle> detect_circles(const Image& gray,
                                   const CircleParams& params) {
  if (gray.channels() != 1) {
    throw std::invalid_argument("detect_circles expects a grayscale image");
  }
  if (params.r_min < 1 || params.r_min >= params.r_max) {
    throw std::invalid_argument("circle radii must satisfy 1 <= r_min < r_max");
  }
  const int w = gray.width();
  const int h = gray.height();
  const std::vector<Edge> edges = thinned_edges(gray, params.edge_threshold);
  if (edges.empty()) return {};

  std::vector<int> acc(static_cast<size_t>(w) * h, 0);
  for (const Edge& e : edges) {
    for (int sign : {1, -1}) {
      for (int r = params.r_min; r <= params.r_max; ++r) {
        const int cx = static_cast<int>(std::lround(e.x + sign * r * e.dx));
        const int cy = static_cast<int>(std::lround(e.y + sign * r * e.dy));
        if (cx < 0 || cy < 0 || cx >= w || cy >= h) break;
        ++acc[static_cast<size_t>(cy) * w + cx];
      }
    }
  }

  // 3x3 box sum absorbs center quantization.
  std::vector<int> box(acc.size(), 0);
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      int s = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) s += acc[(y + dy) * w + (x + dx)];
      }
      box[static_cast<size_t>(y) * w + x] = s;
    }
  }

  const double min_center_votes =
      params.center_fraction * 2.0 * std::numbers::pi * params.r_min;
  struct Center {
    int x, y, votes;
  };
  std::vector<Center> centers;
  constexpr int kPeakRadius = 2;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const int v = box[static_cast<size_t>(y) * w + x];
      if (v < min_center_votes) continue;
      bool is_peak = true;
      for (int dy = -kPeakRadius; dy <= kPeakRadius && is_peak; ++dy) {
        for (int dx = -kPeakRadius; dx <= kPeakRadius; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) {
            continue;
          }
          const int nv = box[static_cast<size_t>(ny) * w + nx];
          // Strict on the earlier half so plateaus keep exactly one pixel.
          const bool earlier = dy < 0 || (dy == 0 && dx < 0);
          if (nv > v || (earlier && nv == v)) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) centers.push_back({x, y, v});
    }
  }
  std::stable_sort(centers.begin(), centers.end(),
                   [](const Center& a, const Center& b) {
                     return a.votes > b.votes;
                   });

  // Radially oriented edges whose distance from (cx, cy) is within `tol`
  // of r.
  auto inliers = [&](double cx, double cy, double r, double tol) {
    std::vector<const Edge*> out;
    for (const Edge& e : edges) {
      const double ex = e.x - cx;
      const double ey = e.y - cy;
      const double d = std::hypot(ex, ey);
      if (std::abs(d - r) > tol) continue;
      if (std::abs(ex * e.dx + ey * e.dy) < 0.9 * d) continue;
      out.push_back(&e);
    }
    return out;
  };

  std::vector<Circle> circles;
  std::vector<int> hist(params.r_max + 3);
  for (const Center& c : centers) {
    if (static_cast<int>(circles.size()) >= params.max_circles) break;
    double cx = c.x;
    double cy = c.y;

    // Coarse radius: the best-supported 3-bin window around the peak.
    std::fill(hist.begin(), hist.end(), 0);
    for (const Edge* e : inliers(cx, cy, (params.r_min + params.r_max) / 2.0,
                                 (params.r_max - params.r_min) / 2.0 + 1)) {
      const int bin = static_cast<int>(std::lround(std::hypot(e->x - cx, e->y - cy)));
      if (bin >= 0 && bin < static_cast<int>(hist.size())) ++hist[bin];
    }
    int best_r = 0, best_support = 0;
    for (int r = params.r_min; r <= params.r_max; ++r) {
      const int s = hist[r - 1] + hist[r] + hist[r + 1];
      if (s > best_support) {
        best_support = s;
        best_r = r;
      }
    }
    if (best_r == 0) continue;

    // Gradient directions are only good to a few degrees, so the vote peak
    // can sit several pixels off center. Refine with an algebraic circle
    // fit to the supporting edges.
    double radius = best_r;
    bool fitted = true;
    for (int iter = 0; iter < 3 && fitted; ++iter) {
      const auto pts = inliers(cx, cy, radius, iter == 0 ? 4.0 : 2.5);
      fitted = fit_circle(pts, cx, cy, radius);
    }
    if (!fitted || radius < params.r_min - 1 || radius > params.r_max + 1) {
      continue;
    }
    const int support = static_cast<int>(inliers(cx, cy, radius, 1.5).size());
    if (support < params.support_fraction * 2.0 * std::numbers::pi * radius) {
      continue;
    }
    const bool duplicate =
        std::any_of(circles.begin(), circles.end(), [&](const Circle& o) {
          return std::hypot(o.cx - cx, o.cy - cy) < params.r_min / 2.0 &&
                 std::abs(o.r - radius) < params.r_min / 2.0;
        });
    if (duplicate) continue;
    circles.push_back({cx, cy, radius, support});
  }

  std::stable_sort(circles.begin(), circles.end(),
                   [](const Circle& a, const Circle& b) {
                     if (std::lround(a.r) != std::lround(b.r)) return a.r > b.r;
                     return a.votes > b.votes;
                   });
  return circles;
}

}  // namespace herodet

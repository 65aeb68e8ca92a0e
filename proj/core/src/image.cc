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

#include "herodet/image.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace herodet {

Rect Rect::intersect(const Rect& other) const {
  const int x0 = std::max(x, other.x);
  const int y0 = std::max(y, other.y);
  const int x1 = std::min(right(), other.right());
  const int y1 = std::min(bottom(), other.bottom());
  if (x1 <= x0 || y1 <= y0) return {x0, y0, 0, 0};
  return {x0, y0, x1 - x0, y1 - y0};
}

Image::Image(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                std::to_string(channels));
  }
  pixels_.assign(static_cast<size_t>(width) * height * channels, 0);
}

Image::Image(int width, int height, int channels, std::vector<uint8_t> pixels)
    : Image(width, height, channels) {
  if (pixels.size() != pixels_.size()) {
    throw std::invalid_argument("pixel buffer size does not match dimensions");
  }
  pixels_ = std::move(pixels);
}

Rgb Image::rgb(int x, int y) const {
  if (channels_ == 1) {
    const uint8_t v = at(x, y);
    return {v, v, v};
  }
  return {at(x, y, 0), at(x, y, 1), at(x, y, 2)};
}

void Image::set_rgb(int x, int y, Rgb color) {
  if (channels_ == 1) {
    at(x, y) = static_cast<uint8_t>(
        std::lround(0.299 * color.r + 0.587 * color.g + 0.114 * color.b));
    return;
  }
  at(x, y, 0) = color.r;
  at(x, y, 1) = color.g;
  at(x, y, 2) = color.b;
}

void Image::fill(Rgb color) { fill_rect(bounds(), color); }

void Image::fill_rect(const Rect& rect, Rgb color) {
  const Rect r = rect.intersect(bounds());
  for (int y = r.y; y < r.bottom(); ++y) {
    for (int x = r.x; x < r.right(); ++x) set_rgb(x, y, color);
  }
}

MatchMap::MatchMap(int width, int height, float value)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("match map dimensions must be positive");
  }
  values_.assign(static_cast<size_t>(width) * height, value);
}

MatchMap::MatchMap(int width, int height, std::vector<float> values)
    : MatchMap(width, height) {
  if (values.size() != values_.size()) {
    throw std::invalid_argument("match map buffer size does not match");
  }
  values_ = std::move(values);
}

Image to_grayscale(const Image& img) {
  if (img.channels() == 1) return img;
  Image gray(img.width(), img.height(), 1);
  const auto& src = img.pixels();
  auto& dst = gray.pixels();
  for (size_t i = 0, n = dst.size(); i < n; ++i) {
    const double luma =
        0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
    dst[i] = static_cast<uint8_t>(std::clamp(std::lround(luma), 0L, 255L));
  }
  return gray;
}

namespace {

struct Tap {
  int i0;
  int i1;
  float w1;  // weight of i1; i0 gets 1 - w1
};

std::vector<Tap> bilinear_taps(int src_len, int dst_len) {
  std::vector<Tap> taps(dst_len);
  const double ratio = static_cast<double>(src_len) / dst_len;
  for (int d = 0; d < dst_len; ++d) {
    double s = (d + 0.5) * ratio - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    const int i0 = static_cast<int>(std::floor(s));
    const int i1 = std::min(i0 + 1, src_len - 1);
    taps[d] = {i0, i1, static_cast<float>(s - i0)};
  }
  return taps;
}

}  // namespace

Image resize_bilinear(const Image& img, int width, int height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("resize target must be positive");
  }
  if (width == img.width() && height == img.height()) return img;
  const int ch = img.channels();
  const auto xt = bilinear_taps(img.width(), width);
  const auto yt = bilinear_taps(img.height(), height);
  Image out(width, height, ch);
  std::vector<float> upper(static_cast<size_t>(width) * ch);
  std::vector<float> lower(upper.size());
  auto horizontal = [&](int sy, std::vector<float>& buf) {
    const auto row = img.row(sy);
    for (int x = 0; x < width; ++x) {
      const Tap& t = xt[x];
      for (int c = 0; c < ch; ++c) {
        const float a = row[t.i0 * ch + c];
        const float b = row[t.i1 * ch + c];
        buf[x * ch + c] = a + (b - a) * t.w1;
      }
    }
  };
  for (int y = 0; y < height; ++y) {
    const Tap& t = yt[y];
    horizontal(t.i0, upper);
    horizontal(t.i1, lower);
    auto dst = out.row(y);
    for (size_t i = 0; i < upper.size(); ++i) {
      const float v = upper[i] + (lower[i] - upper[i]) * t.w1;
      dst[i] = static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

NormalizedFrame normalize_height(const Image& img, int target) {
  if (target <= 0) {
    throw std::invalid_argument("normalization target height must be positive");
  }
  if (img.empty()) throw std::invalid_argument("cannot normalize empty image");
  if (img.height() == target) return {img, 1.0};
  const double scale = static_cast<double>(target) / img.height();
  const int width =
      std::max(1, static_cast<int>(std::lround(img.width() * scale)));
  return {resize_bilinear(img, width, target), scale};
}

namespace {

// Running max over [i - r, i + r] clipped to [0, n), for a strided line.
// `g` and `h` are scratch buffers of at least n + 2r elements.
void running_max_line(const float* src, float* dst, int n, int stride, int r,
                      std::vector<float>& g, std::vector<float>& h) {
  constexpr float kLow = -std::numeric_limits<float>::infinity();
  const int k = 2 * r + 1;
  const int padded = n + 2 * r;
  // Padded index p corresponds to source index p - r.
  auto value = [&](int p) {
    const int i = p - r;
    return (i >= 0 && i < n) ? src[static_cast<size_t>(i) * stride] : kLow;
  };
  for (int p = 0; p < padded; ++p) {
    g[p] = (p % k == 0) ? value(p) : std::max(g[p - 1], value(p));
  }
  for (int p = padded - 1; p >= 0; --p) {
    h[p] = (p == padded - 1 || (p + 1) % k == 0) ? value(p)
                                                 : std::max(h[p + 1], value(p));
  }
  // Window for output i is padded [i, i + 2r].
  for (int i = 0; i < n; ++i) {
    dst[static_cast<size_t>(i) * stride] = std::max(h[i], g[i + 2 * r]);
  }
}

}  // namespace

MatchMap maximum_filter(const MatchMap& map, int radius) {
  if (radius < 1) throw std::invalid_argument("filter radius must be >= 1");
  const int w = map.width();
  const int h = map.height();
  MatchMap tmp(w, h);
  MatchMap out(w, h);
  const size_t scratch = static_cast<size_t>(std::max(w, h) + 2 * radius);
  std::vector<float> g(scratch), hh(scratch);
  for (int y = 0; y < h; ++y) {
    running_max_line(&map.values()[static_cast<size_t>(y) * w],
                     &tmp.values()[static_cast<size_t>(y) * w], w, 1, radius, g,
                     hh);
  }
  // Column pass through a contiguous buffer keeps the strided reads in one
  // place.
  std::vector<float> col(h), col_out(h);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) col[y] = tmp.at(x, y);
    running_max_line(col.data(), col_out.data(), h, 1, radius, g, hh);
    for (int y = 0; y < h; ++y) out.at(x, y) = col_out[y];
  }
  return out;
}

CropResult crop(const Image& img, const Rect& rect) {
  const Rect r = rect.intersect(img.bounds());
  if (r.empty()) {
    throw std::invalid_argument("crop rect does not intersect the image");
  }
  Image out(r.w, r.h, img.channels());
  const size_t row_bytes = static_cast<size_t>(r.w) * img.channels();
  for (int y = 0; y < r.h; ++y) {
    const auto src = img.row(r.y + y).subspan(
        static_cast<size_t>(r.x) * img.channels(), row_bytes);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return {std::move(out), r};
}

void paste(Image& dst, const Image& src, int x, int y) {
  if (dst.channels() != src.channels()) {
    throw std::invalid_argument("paste requires matching channel counts");
  }
  const Rect r = Rect{x, y, src.width(), src.height()}.intersect(dst.bounds());
  if (r.empty()) return;
  const int ch = dst.channels();
  for (int yy = r.y; yy < r.bottom(); ++yy) {
    const auto s = src.row(yy - y).subspan(
        static_cast<size_t>(r.x - x) * ch, static_cast<size_t>(r.w) * ch);
    std::copy(s.begin(), s.end(),
              dst.row(yy).begin() + static_cast<ptrdiff_t>(r.x) * ch);
  }
}

}  // namespace herodet

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

#ifndef HERODET_IMAGE_H_
#define HERODET_IMAGE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace herodet {

// Height every frame is rescaled to before matching. The blood-bar template
// has a fixed pixel size at this height regardless of the frame width.
inline constexpr int kNormalizedHeight = 720;

struct Size {
  int width = 0;
  int height = 0;

  friend bool operator==(const Size&, const Size&) = default;
};

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool empty() const { return w <= 0 || h <= 0; }
  bool contains(const Rect& other) const {
    return other.x >= x && other.y >= y && other.right() <= right() &&
           other.bottom() <= bottom();
  }
  Rect intersect(const Rect& other) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major, channel-interleaved 8-bit raster with 1 (gray) or 3 (RGB)
// channels.
class Image {
 public:
  Image() = default;
  // Zero-filled image. Throws std::invalid_argument on non-positive
  // dimensions or a channel count other than 1 or 3.
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  Size size() const { return {width_, height_}; }
  Rect bounds() const { return {0, 0, width_, height_}; }
  bool empty() const { return pixels_.empty(); }

  uint8_t at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }
  uint8_t& at(int x, int y, int c = 0) {
    return pixels_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }

  Rgb rgb(int x, int y) const;
  void set_rgb(int x, int y, Rgb color);

  std::span<const uint8_t> row(int y) const {
    return {pixels_.data() + static_cast<size_t>(y) * width_ * channels_,
            static_cast<size_t>(width_) * channels_};
  }
  std::span<uint8_t> row(int y) {
    return {pixels_.data() + static_cast<size_t>(y) * width_ * channels_,
            static_cast<size_t>(width_) * channels_};
  }

  const std::vector<uint8_t>& pixels() const { return pixels_; }
  std::vector<uint8_t>& pixels() { return pixels_; }

  void fill(Rgb color);
  void fill_rect(const Rect& rect, Rgb color);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<uint8_t> pixels_;
};

// Single-channel real-valued field; used for template-matching responses.
class MatchMap {
 public:
  MatchMap() = default;
  MatchMap(int width, int height, float value = 0.0f);
  MatchMap(int width, int height, std::vector<float> values);

  int width() const { return width_; }
  int height() const { return height_; }

  float at(int x, int y) const {
    return values_[static_cast<size_t>(y) * width_ + x];
  }
  float& at(int x, int y) {
    return values_[static_cast<size_t>(y) * width_ + x];
  }

  const std::vector<float>& values() const { return values_; }
  std::vector<float>& values() { return values_; }

  friend bool operator==(const MatchMap&, const MatchMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
};

struct NormalizedFrame {
  Image image;
  // normalized height / source height; divide normalized coordinates by it
  // to get back to source coordinates.
  double scale = 1.0;
};

// BT.601 luma. Single-channel input is returned unchanged.
Image to_grayscale(const Image& img);

// Bilinear resampling with pixel-center alignment.
Image resize_bilinear(const Image& img, int width, int height);

// Rescales to `target` rows, preserving aspect ratio. Frames already at the
// target height are returned untouched with scale 1.
NormalizedFrame normalize_height(const Image& img,
                                 int target = kNormalizedHeight);

// Square-window dilation with windows clipped at the borders. Separable
// van Herk/Gil-Werman running max, O(1) per pixel per pass.
MatchMap maximum_filter(const MatchMap& map, int radius);

struct CropResult {
  Image image;
  Rect actual;  // the requested rect clamped to the image
};

// Throws std::invalid_argument when `rect` does not intersect the image.
CropResult crop(const Image& img, const Rect& rect);

// Copies `src` into `dst` with its top-left at (x, y), clipped to `dst`.
// Channel counts must agree.
void paste(Image& dst, const Image& src, int x, int y);

}  // namespace herodet

#endif  // HERODET_IMAGE_H_

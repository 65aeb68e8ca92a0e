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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "herodet/classifier.h"
#include "json.hpp"

namespace herodet {
namespace {

constexpr char kMagic[4] = {'H', 'D', 'R', 'C'};
constexpr int kFormatVersion = 1;
constexpr char kFeatureName[] = "gray32x32-znorm";

// Area-weighted resampling weights from `src` samples down to `dst` bins.
struct AreaTap {
  int index;
  double weight;
};

std::vector<std::vector<AreaTap>> area_taps(int src, int dst) {
  std::vector<std::vector<AreaTap>> taps(dst);
  const double step = static_cast<double>(src) / dst;
  for (int d = 0; d < dst; ++d) {
    const double lo = d * step;
    const double hi = (d + 1) * step;
    for (int s = static_cast<int>(std::floor(lo));
         s < std::min(src, static_cast<int>(std::ceil(hi))); ++s) {
      const double overlap = std::min(hi, s + 1.0) - std::max(lo, double(s));
      if (overlap > 0.0) taps[d].push_back({s, overlap / step});
    }
  }
  return taps;
}

void put_u32(std::ostream& out, uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v),
                              static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw std::runtime_error("truncated model file");
  }
  return uint32_t{b[0]} | (uint32_t{b[1]} << 8) | (uint32_t{b[2]} << 16) |
         (uint32_t{b[3]} << 24);
}

}  // namespace

ReferenceClassifier::ReferenceClassifier(std::vector<std::string> labels,
                                         std::vector<float> centroids,
                                         double temperature)
    : labels_(std::move(labels)),
      centroids_(std::move(centroids)),
      temperature_(temperature) {
  if (labels_.empty()) {
    throw std::invalid_argument("reference classifier needs at least one label");
  }
  if (centroids_.size() != labels_.size() * kFeatureDims) {
    throw std::invalid_argument("centroid matrix does not match label count");
  }
  if (!(temperature_ > 0.0) || !std::isfinite(temperature_)) {
    throw std::invalid_argument("softmax temperature must be positive");
  }
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate labels in reference classifier");
  }
}

std::vector<float> ReferenceClassifier::feature(const Image& img) {
  const Image gray = to_grayscale(img);
  const auto xt = area_taps(gray.width(), kThumbSide);
  const auto yt = area_taps(gray.height(), kThumbSide);
  // Horizontal pass per source row, then vertical.
  std::vector<double> rows(static_cast<size_t>(gray.height()) * kThumbSide);
  for (int y = 0; y < gray.height(); ++y) {
    const auto src = gray.row(y);
    for (int d = 0; d < kThumbSide; ++d) {
      double s = 0.0;
      for (const AreaTap& t : xt[d]) s += t.weight * src[t.index];
      rows[static_cast<size_t>(y) * kThumbSide + d] = s;
    }
  }
  std::vector<double> thumb(kFeatureDims);
  for (int d = 0; d < kThumbSide; ++d) {
    for (int x = 0; x < kThumbSide; ++x) {
      double s = 0.0;
      for (const AreaTap& t : yt[d]) {
        s += t.weight * rows[static_cast<size_t>(t.index) * kThumbSide + x];
      }
      thumb[d * kThumbSide + x] = s;
    }
  }
  double mean = 0.0;
  for (double v : thumb) mean += v;
  mean /= kFeatureDims;
  double var = 0.0;
  for (double v : thumb) var += (v - mean) * (v - mean);
  var /= kFeatureDims;
  std::vector<float> out(kFeatureDims, 0.0f);
  if (var <= 1e-12) return out;
  const double inv = 1.0 / std::sqrt(var);
  for (int i = 0; i < kFeatureDims; ++i) {
    out[i] = static_cast<float>((thumb[i] - mean) * inv);
  }
  return out;
}

Prediction ReferenceClassifier::classify(const Image& crop) {
  const std::vector<float> f = feature(crop);
  std::vector<double> logits(labels_.size());
  for (size_t k = 0; k < labels_.size(); ++k) {
    const auto c = centroid(k);
    double d2 = 0.0;
    for (int i = 0; i < kFeatureDims; ++i) {
      const double diff = static_cast<double>(f[i]) - c[i];
      d2 += diff * diff;
    }
    logits[k] = -std::sqrt(d2) / temperature_;
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double& l : logits) {
    l = std::exp(l - top);
    z += l;
  }
  std::vector<LabelScore> scores(labels_.size());
  for (size_t k = 0; k < labels_.size(); ++k) {
    scores[k] = {labels_[k], std::clamp(logits[k] / z, 0.0, 1.0)};
  }
  return make_prediction(std::move(scores));
}

void ReferenceClassifier::save(const std::filesystem::path& path) const {
  static_assert(std::endian::native == std::endian::little,
                "model serialization assumes a little-endian host");
  nlohmann::json header = {{"format", "herodet-reference-classifier"},
                           {"version", kFormatVersion},
                           {"labels", labels_},
                           {"feature", kFeatureName},
                           {"feature_dims", kFeatureDims},
                           {"temperature", temperature_}};
  const std::string text = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create " + path.string());
  out.write(kMagic, 4);
  put_u32(out, static_cast<uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(reinterpret_cast<const char*>(centroids_.data()),
            static_cast<std::streamsize>(centroids_.size() * sizeof(float)));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ReferenceClassifier ReferenceClassifier::load(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path.string() + " is not a reference model");
  }
  const uint32_t header_len = get_u32(in);
  if (header_len > (1u << 24)) {
    throw std::runtime_error("implausible model header length");
  }
  std::string text(header_len, '\0');
  if (!in.read(text.data(), header_len)) {
    throw std::runtime_error("truncated model header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("bad model header: ") + e.what());
  }
  if (header.value("version", 0) != kFormatVersion) {
    throw std::runtime_error("unsupported model version");
  }
  if (header.value("feature_dims", 0) != kFeatureDims ||
      header.value("feature", std::string()) != kFeatureName) {
    throw std::runtime_error("model feature layout mismatch");
  }
  auto labels = header.at("labels").get<std::vector<std::string>>();
  const double temperature =
      header.value("temperature", kDefaultTemperature);
  std::vector<float> centroids(labels.size() * kFeatureDims);
  if (!in.read(reinterpret_cast<char*>(centroids.data()),
               static_cast<std::streamsize>(centroids.size() * sizeof(float)))) {
    throw std::runtime_error("truncated centroid matrix");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("trailing bytes after centroid matrix");
  }
  return ReferenceClassifier(std::move(labels), std::move(centroids),
                             temperature);
}

ReferenceClassifier train_reference(std::span<const LabeledCrop> samples,
                                    std::span<const std::string> expected_labels,
                                    double temperature) {
  std::map<std::string, std::vector<std::vector<float>>> by_label;
  for (const LabeledCrop& s : samples) {
    by_label[s.label].push_back(ReferenceClassifier::feature(s.image));
  }
  std::vector<std::string> missing;
  for (const std::string& l : expected_labels) {
    if (!by_label.contains(l)) missing.push_back(l);
  }
  if (!missing.empty()) {
    std::string msg = "no training samples for label(s):";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }
  if (by_label.empty()) throw std::invalid_argument("no training samples");

  std::vector<std::string> labels;
  std::vector<float> centroids;
  constexpr int kDims = ReferenceClassifier::kFeatureDims;
  for (auto& [label, feats] : by_label) {
    // Summing in a canonical order makes the centroid independent of the
    // order samples arrived in.
    std::sort(feats.begin(), feats.end());
    std::vector<double> sum(kDims, 0.0);
    for (const auto& f : feats) {
      for (int i = 0; i < kDims; ++i) sum[i] += f[i];
    }
    labels.push_back(label);
    for (int i = 0; i < kDims; ++i) {
      centroids.push_back(static_cast<float>(sum[i] / feats.size()));
    }
  }
  return ReferenceClassifier(std::move(labels), std::move(centroids),
                             temperature);
}

}  // namespace herodet

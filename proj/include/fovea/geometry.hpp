// Copyright 2026 The fovea-warp Authors.
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

/**
 * @file geometry.hpp
 * @brief Raster and box types plus the bilinear sampling primitive.
 *
 * Coordinates are normalized: 0 is the left/top edge of the canvas and 1 the
 * right/bottom edge. Pixel i of an N-pixel axis has its center at (i + 0.5)/N.
 * Samplers clamp out-of-range coordinates to the nearest edge pixel center.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fovea {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxChannels = 4;

class ImageBuffer {
 public:
  ImageBuffer() = default;

  ImageBuffer(int width, int height, int channels, float fill = 0.0f)
      : width_(width), height_(height), channels_(channels) {
    check_dims(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
  }

  ImageBuffer(int width, int height, int channels, std::vector<float> data)
      : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_dims(width, height, channels);
    if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
      throw Error("ImageBuffer: data length does not match width*height*channels");
    }
    for (float v : data_) {
      if (!std::isfinite(v)) throw Error("ImageBuffer: non-finite pixel value");
    }
  }

  /// 8-bit interleaved samples scaled to [0,1].
  static ImageBuffer from_u8(int width, int height, int channels,
                             std::span<const std::uint8_t> bytes) {
    check_dims(width, height, channels);
    if (bytes.size() != static_cast<std::size_t>(width) * height * channels) {
      throw Error("ImageBuffer: byte length does not match width*height*channels");
    }
    std::vector<float> data(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) data[i] = bytes[i] / 255.0f;
    return ImageBuffer(width, height, channels, std::move(data));
  }

  /// Quantizes to 8 bits, rounding half away from zero.
  std::vector<std::uint8_t> to_u8() const {
    std::vector<std::uint8_t> out(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) {
      const double v = std::clamp(static_cast<double>(data_[i]), 0.0, 1.0) * 255.0;
      out[i] = static_cast<std::uint8_t>(std::lround(v));
    }
    return out;
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }

  float at(int x, int y, int c) const { return data_[index(x, y, c)]; }
  float& at(int x, int y, int c) { return data_[index(x, y, c)]; }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  static void check_dims(int width, int height, int channels) {
    if (width <= 0 || height <= 0) throw Error("ImageBuffer: dimensions must be positive");
    if (channels < 1 || channels > kMaxChannels) {
      throw Error("ImageBuffer: channel count must be in [1, 4]");
    }
  }

  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Space { original, warped };

inline const char* to_string(Space s) { return s == Space::original ? "original" : "warped"; }

struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  Space space = Space::original;

  BBox() = default;
  BBox(double x1_, double y1_, double x2_, double y2_, Space space_ = Space::original)
      : x1(x1_), y1(y1_), x2(x2_), y2(y2_), space(space_) {
    if (!(std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2))) {
      throw Error("BBox: coordinates must be finite");
    }
    if (!(x1 < x2 && y1 < y2)) throw Error("BBox: requires x1 < x2 and y1 < y2");
  }

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  Point center() const { return {0.5 * (x1 + x2), 0.5 * (y1 + y2)}; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Boxes with parallel score / class columns. All boxes share one space.
class DetectionSet {
 public:
  DetectionSet() = default;
  explicit DetectionSet(Space space) : space_(space) {}

  DetectionSet(std::vector<BBox> boxes, std::vector<double> scores = {},
               std::vector<int> class_ids = {})
      : boxes_(std::move(boxes)), scores_(std::move(scores)), class_ids_(std::move(class_ids)) {
    if (scores_.empty()) scores_.assign(boxes_.size(), 1.0);
    if (class_ids_.empty()) class_ids_.assign(boxes_.size(), 0);
    if (scores_.size() != boxes_.size() || class_ids_.size() != boxes_.size()) {
      throw Error("DetectionSet: parallel lists must have equal length");
    }
    if (!boxes_.empty()) space_ = boxes_.front().space;
    for (const auto& b : boxes_) {
      if (b.space != space_) throw Error("DetectionSet: boxes must share one space tag");
    }
    for (double s : scores_) {
      if (!(s >= 0.0 && s <= 1.0)) throw Error("DetectionSet: scores must lie in [0,1]");
    }
  }

  void add(const BBox& box, double score = 1.0, int class_id = 0) {
    if (!boxes_.empty() && box.space != space_) {
      throw Error("DetectionSet: boxes must share one space tag");
    }
    if (!(score >= 0.0 && score <= 1.0)) throw Error("DetectionSet: scores must lie in [0,1]");
    if (boxes_.empty()) space_ = box.space;
    boxes_.push_back(box);
    scores_.push_back(score);
    class_ids_.push_back(class_id);
  }

  std::size_t size() const { return boxes_.size(); }
  bool empty() const { return boxes_.empty(); }
  Space space() const { return space_; }

  const std::vector<BBox>& boxes() const { return boxes_; }
  const std::vector<double>& scores() const { return scores_; }
  const std::vector<int>& class_ids() const { return class_ids_; }

  friend bool operator==(const DetectionSet&, const DetectionSet&) = default;

 private:
  std::vector<BBox> boxes_;
  std::vector<double> scores_;
  std::vector<int> class_ids_;
  Space space_ = Space::original;
};

using Pixel = std::array<float, kMaxChannels>;

namespace detail {

// Continuous pixel coordinate of a normalized position, clamped to the
// pixel-center range and snapped to a 2^-20 px lattice. The snap makes
// sampling at a pixel center exact even when the coordinate carries
// round-off from upstream arithmetic.
inline double source_pixel_coord(double t, int n) {
  double p = t * n - 0.5;
  p = std::clamp(p, 0.0, static_cast<double>(n - 1));
  constexpr double kLattice = 1048576.0;
  return std::nearbyint(p * kLattice) / kLattice;
}

// Lower neighbor and its complement weight along one axis.
struct Tap {
  int i0 = 0;
  int i1 = 0;
  double t = 0.0;
};

inline Tap axis_tap(double coord, int n) {
  const double p = source_pixel_coord(coord, n);
  Tap tap;
  tap.i0 = static_cast<int>(std::floor(p));
  tap.i1 = std::min(tap.i0 + 1, n - 1);
  tap.t = p - tap.i0;
  return tap;
}

inline void blend(const ImageBuffer& img, const Tap& tx, const Tap& ty, float* out) {
  const int nc = img.channels();
  const double wx0 = 1.0 - tx.t, wy0 = 1.0 - ty.t;
  for (int c = 0; c < nc; ++c) {
    const double top = wx0 * img.at(tx.i0, ty.i0, c) + tx.t * img.at(tx.i1, ty.i0, c);
    const double bot = wx0 * img.at(tx.i0, ty.i1, c) + tx.t * img.at(tx.i1, ty.i1, c);
    out[c] = static_cast<float>(wy0 * top + ty.t * bot);
  }
}

}  // namespace detail

/// Bilinear interpolation of the four pixel centers around p.
inline Pixel sample_bilinear(const ImageBuffer& img, Point p) {
  if (img.empty()) throw Error("sample_bilinear: empty image");
  Pixel out{};
  detail::blend(img, detail::axis_tap(p.x, img.width()), detail::axis_tap(p.y, img.height()),
                out.data());
  return out;
}

inline ImageBuffer uniform_downsample(const ImageBuffer& img, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1) throw Error("uniform_downsample: output dims must be >= 1");
  ImageBuffer out(out_w, out_h, img.channels());
  std::vector<detail::Tap> xs(out_w);
  for (int i = 0; i < out_w; ++i) xs[i] = detail::axis_tap((i + 0.5) / out_w, img.width());
  for (int j = 0; j < out_h; ++j) {
    const auto ty = detail::axis_tap((j + 0.5) / out_h, img.height());
    for (int i = 0; i < out_w; ++i) detail::blend(img, xs[i], ty, &out.at(i, j, 0));
  }
  return out;
}

}  // namespace fovea

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
 * @file saliency.hpp
 * @brief Bounding-box KDE saliency and the dataset / temporal / combined priors.
 *
 * A saliency grid is a low-resolution nonnegative map over the original
 * image. The KDE generator places one bivariate normal density per box,
 * centered on the box with covariance bandwidth * diag(w, h) in squared
 * pixels, on top of a constant floor 1/K^2 that keeps every cell strictly
 * positive. Densities are proper (they integrate to one), so a large box
 * spreads its mass thin and contributes little peak saliency.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "fovea/geometry.hpp"

namespace fovea {

inline constexpr int kDefaultGridRows = 31;
inline constexpr int kDefaultGridCols = 51;

class SaliencyGrid2D {
 public:
  SaliencyGrid2D() = default;
  SaliencyGrid2D(int rows, int cols, double fill = 0.0) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw Error("SaliencyGrid2D: rows and cols must be >= 1");
    values_.assign(static_cast<std::size_t>(rows) * cols, fill);
    validate();
  }
  SaliencyGrid2D(int rows, int cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows < 1 || cols < 1) throw Error("SaliencyGrid2D: rows and cols must be >= 1");
    if (values_.size() != static_cast<std::size_t>(rows) * cols) {
      throw Error("SaliencyGrid2D: value count does not match rows*cols");
    }
    validate();
  }

  static SaliencyGrid2D uniform(int rows = kDefaultGridRows, int cols = kDefaultGridCols) {
    return SaliencyGrid2D(rows, cols, 1.0 / (static_cast<double>(rows) * cols));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int r, int c) const { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<double>& values() const { return values_; }
  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  friend bool operator==(const SaliencyGrid2D&, const SaliencyGrid2D&) = default;

 private:
  void validate() const {
    for (double v : values_) {
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw Error("SaliencyGrid2D: values must be finite and nonnegative");
      }
    }
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

class SaliencyProfile1D {
 public:
  SaliencyProfile1D() = default;
  explicit SaliencyProfile1D(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error("SaliencyProfile1D: profile must be non-empty");
    for (double v : values_) {
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw Error("SaliencyProfile1D: values must be finite and nonnegative");
      }
    }
  }

  static SaliencyProfile1D uniform(int length) {
    return SaliencyProfile1D(std::vector<double>(length, 1.0 / length));
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  /// Rescaled to sum 1; throws when the profile has no mass.
  SaliencyProfile1D normalized() const {
    const double s = sum();
    if (!(s > 0.0)) throw Error("SaliencyProfile1D: degenerate (all-zero) profile");
    std::vector<double> out(values_);
    for (double& v : out) v /= s;
    return SaliencyProfile1D(std::move(out));
  }

  friend bool operator==(const SaliencyProfile1D&, const SaliencyProfile1D&) = default;

 private:
  std::vector<double> values_;
};

struct KdeParams {
  double amplitude = 1.0;
  double bandwidth = 64.0;  // px
  double alpha = 0.5;
  int kernel_size = 35;     // attraction-kernel support in cells; floor is 1/K^2
  bool score_weighting = false;

  double floor() const { return 1.0 / (static_cast<double>(kernel_size) * kernel_size); }

  void validate() const {
    if (!(amplitude > 0.0)) throw Error("KdeParams: amplitude must be > 0");
    if (!(bandwidth > 0.0)) throw Error("KdeParams: bandwidth must be > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("KdeParams: alpha must lie in [0,1]");
    if (kernel_size < 1) throw Error("KdeParams: kernel_size must be >= 1");
  }
};

/// Target grid over the original image.
struct GridSpec {
  int rows = kDefaultGridRows;
  int cols = kDefaultGridCols;
  int image_w = 1920;
  int image_h = 1200;
};

/// Sum of per-box normal densities plus the 1/K^2 floor, evaluated at grid
/// cell centers in original-image pixel coordinates. Not normalized.
inline SaliencyGrid2D kde_saliency(const DetectionSet& boxes, const KdeParams& params,
                                   const GridSpec& grid) {
  params.validate();
  if (grid.rows < 1 || grid.cols < 1) throw Error("kde_saliency: grid dims must be >= 1");
  if (grid.image_w < 1 || grid.image_h < 1) throw Error("kde_saliency: image dims must be > 0");
  if (!boxes.empty() && boxes.space() != Space::original) {
    throw Error("kde_saliency: boxes must be in original space");
  }

  const double img_w = grid.image_w, img_h = grid.image_h;
  std::vector<double> gx(grid.cols), gy(grid.rows);
  for (int c = 0; c < grid.cols; ++c) gx[c] = (c + 0.5) / grid.cols * img_w;
  for (int r = 0; r < grid.rows; ++r) gy[r] = (r + 0.5) / grid.rows * img_h;

  std::vector<double> values(static_cast<std::size_t>(grid.rows) * grid.cols, 0.0);
  std::vector<double> fx(grid.cols), fy(grid.rows);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const BBox& b = boxes.boxes()[i];
    const double w = b.width() * img_w, h = b.height() * img_h;
    if (!(w > 0.0 && h > 0.0)) throw Error("kde_saliency: box width and height must be > 0");
    const double cx = b.center().x * img_w, cy = b.center().y * img_h;
    const double var_x = params.bandwidth * w, var_y = params.bandwidth * h;
    double weight = params.amplitude / (2.0 * std::numbers::pi * std::sqrt(var_x * var_y));
    if (params.score_weighting) weight *= boxes.scores()[i];

    // The diagonal covariance factors the density into x and y terms.
    for (int c = 0; c < grid.cols; ++c) {
      const double d = gx[c] - cx;
      fx[c] = std::exp(-0.5 * d * d / var_x);
    }
    for (int r = 0; r < grid.rows; ++r) {
      const double d = gy[r] - cy;
      fy[r] = weight * std::exp(-0.5 * d * d / var_y);
    }
    for (int r = 0; r < grid.rows; ++r) {
      double* row = values.data() + static_cast<std::size_t>(r) * grid.cols;
      for (int c = 0; c < grid.cols; ++c) row[c] += fy[r] * fx[c];
    }
  }
  const double floor = params.floor();
  for (double& v : values) v += floor;
  return SaliencyGrid2D(grid.rows, grid.cols, std::move(values));
}

struct Marginals {
  SaliencyGrid2D grid;  // normalized to sum 1
  SaliencyProfile1D x;  // column sums, length cols
  SaliencyProfile1D y;  // row sums, length rows
};

inline SaliencyGrid2D normalize(const SaliencyGrid2D& grid) {
  const double s = grid.sum();
  if (!(s > 0.0)) throw Error("normalize: degenerate (all-zero) saliency grid");
  std::vector<double> v(grid.values());
  for (double& x : v) x /= s;
  return SaliencyGrid2D(grid.rows(), grid.cols(), std::move(v));
}

inline Marginals normalize_and_marginalize(const SaliencyGrid2D& grid) {
  SaliencyGrid2D g = normalize(grid);
  std::vector<double> xs(g.cols(), 0.0), ys(g.rows(), 0.0);
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      xs[c] += g.at(r, c);
      ys[r] += g.at(r, c);
    }
  }
  return {std::move(g), SaliencyProfile1D(std::move(xs)), SaliencyProfile1D(std::move(ys))};
}

/// KDE over every annotated box of a dataset; computed once offline.
inline SaliencyGrid2D dataset_prior(const DetectionSet& all_boxes, const KdeParams& params,
                                    const GridSpec& grid) {
  return kde_saliency(all_boxes, params, grid);
}

/// KDE over the previous frame's detections; uniform on the first frame.
inline SaliencyGrid2D temporal_prior(const std::optional<DetectionSet>& prev,
                                     const KdeParams& params, const GridSpec& grid) {
  if (!prev || prev->empty()) return kde_saliency(DetectionSet{}, params, grid);
  return kde_saliency(*prev, params, grid);
}

/// alpha * s_i + (1 - alpha) * s_d, cellwise. Both inputs must sum to 1.
inline SaliencyGrid2D combine_saliency(const SaliencyGrid2D& s_i, const SaliencyGrid2D& s_d,
                                       double alpha) {
  if (s_i.rows() != s_d.rows() || s_i.cols() != s_d.cols()) {
    throw Error("combine_saliency: dimension mismatch");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("combine_saliency: alpha must lie in [0,1]");
  constexpr double kTol = 1e-6;
  if (std::abs(s_i.sum() - 1.0) > kTol || std::abs(s_d.sum() - 1.0) > kTol) {
    throw Error("combine_saliency: inputs must be normalized");
  }
  std::vector<double> v(s_i.values().size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = alpha * s_i.values()[k] + (1.0 - alpha) * s_d.values()[k];
  }
  return SaliencyGrid2D(s_i.rows(), s_i.cols(), std::move(v));
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Translates every box by independent offsets drawn from U(-j, j) pixels
/// along each axis. Boxes are not clipped to the frame.
inline DetectionSet jitter_boxes(const DetectionSet& boxes, double jitter_px, std::uint64_t seed,
                                 int image_w = 1920, int image_h = 1200) {
  if (!(jitter_px >= 0.0)) throw Error("jitter_boxes: jitter must be >= 0");
  std::mt19937_64 rng(seed);
  DetectionSet out(boxes.space());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const BBox& b = boxes.boxes()[i];
    const double dx = jitter_px * (2.0 * unit_uniform(rng) - 1.0) / image_w;
    const double dy = jitter_px * (2.0 * unit_uniform(rng) - 1.0) / image_h;
    out.add(BBox(b.x1 + dx, b.y1 + dy, b.x2 + dx, b.y2 + dy, b.space), boxes.scores()[i],
            boxes.class_ids()[i]);
  }
  return out;
}

}  // namespace fovea

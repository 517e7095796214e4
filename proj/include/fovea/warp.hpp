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
 * @file warp.hpp
 * @brief Saliency-guided backward maps, image warping and magnification.
 *
 * Every output location x is sent to the saliency-weighted mean of source
 * cell coordinates under a Gaussian attraction kernel centered at x:
 *
 *     Tinv(x) = sum_x' S(x') k(x', x) x' / sum_x' S(x') k(x', x)
 *
 * The sum runs over the saliency grid. With anti-crop enabled, the grid is
 * extended by half-sample symmetric reflection and the padded cells keep
 * their own (out-of-range) coordinates, so the weighted mean at each canvas
 * edge is the edge itself.
 *
 * The map is evaluated at grid resolution, on the nodes {0, cell centers, 1},
 * then linearly interpolated to output pixel centers.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fovea/geometry.hpp"
#include "fovea/saliency.hpp"

namespace fovea {

inline constexpr double kDefaultKernelSigma = 5.5;

/// Truncated Gaussian in grid-cell units.
class AttractionKernel {
 public:
  explicit AttractionKernel(double sigma = kDefaultKernelSigma, int radius = 0) : sigma_(sigma) {
    if (!(sigma > 0.0 && std::isfinite(sigma))) throw Error("AttractionKernel: sigma must be > 0");
    radius_ = radius > 0 ? radius : std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    int_taps_.resize(2 * radius_ + 1);
    for (int k = -radius_; k <= radius_; ++k) int_taps_[k + radius_] = weight(k);
    half_taps_.resize(2 * radius_);
    for (int k = -radius_; k < radius_; ++k) half_taps_[k + radius_] = weight(k + 0.5);
  }

  /// Sigma as a fraction of the grid height, e.g. 0.178 * 31 rows.
  static AttractionKernel from_height_fraction(double fraction, int rows) {
    return AttractionKernel(fraction * rows);
  }

  double sigma() const { return sigma_; }
  int radius() const { return radius_; }
  int support() const { return 2 * radius_ + 1; }

  /// Unnormalized weight at a distance of d cells; zero beyond the radius.
  double weight(double d) const {
    if (std::abs(d) > radius_) return 0.0;
    return std::exp(-0.5 * d * d / (sigma_ * sigma_));
  }

  /// Weights at integer offsets -radius..radius.
  const std::vector<double>& integer_taps() const { return int_taps_; }
  /// Weights at half-integer offsets -radius+0.5..radius-0.5.
  const std::vector<double>& half_taps() const { return half_taps_; }

 private:
  double sigma_;
  int radius_ = 0;
  std::vector<double> int_taps_;
  std::vector<double> half_taps_;
};

/// Half-sample symmetric reflection of an index into [0, n).
inline int reflect_index(int j, int n) {
  const int period = 2 * n;
  int m = j % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

inline SaliencyProfile1D reflect_pad_profile(const SaliencyProfile1D& s, int radius) {
  if (radius < 1) throw Error("reflect_pad_profile: radius must be >= 1");
  const int n = s.size();
  std::vector<double> out(n + 2 * radius);
  for (int i = 0; i < static_cast<int>(out.size()); ++i) out[i] = s[reflect_index(i - radius, n)];
  return SaliencyProfile1D(std::move(out));
}

/// Continuous piecewise-linear function over strictly increasing knots.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> knots, std::vector<double> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.size() < 2 || knots_.size() != values_.size()) {
      throw Error("PiecewiseLinear: need >= 2 knots and one value per knot");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i] > knots_[i - 1])) throw Error("PiecewiseLinear: knots must increase");
    }
  }

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  /// Linear interpolation; clamps to the end values outside the knot range.
  double operator()(double z) const {
    if (z <= knots_.front()) return values_.front();
    if (z >= knots_.back()) return values_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), z);
    const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double t = (z - knots_[k]) / (knots_[k + 1] - knots_[k]);
    return values_[k] + t * (values_[k + 1] - values_[k]);
  }

  /// Solves f(z) = v by binary search over the values and local linear
  /// interpolation. Values must be strictly increasing.
  double inverse(double v) const {
    if (v < values_.front() || v > values_.back()) {
      throw Error("PiecewiseLinear::inverse: target outside the map range");
    }
    const auto it = std::upper_bound(values_.begin(), values_.end(), v);
    if (it == values_.end()) return knots_.back();
    const std::size_t k = static_cast<std::size_t>(it - values_.begin()) - 1;
    const double t = (v - values_[k]) / (values_[k + 1] - values_[k]);
    return knots_[k] + t * (knots_[k + 1] - knots_[k]);
  }

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Sampled 1D backward map for one axis: one source coordinate per output
/// pixel center, plus the map's values at the two canvas edges.
class AxisMap {
 public:
  AxisMap() = default;

  AxisMap(std::vector<double> samples, double lo, double hi) {
    if (samples.empty()) throw Error("AxisMap: need at least one sample");
    const int n = static_cast<int>(samples.size());
    std::vector<double> knots(n + 2), values(n + 2);
    knots[0] = 0.0;
    values[0] = lo;
    for (int i = 0; i < n; ++i) {
      knots[i + 1] = (i + 0.5) / n;
      values[i + 1] = samples[i];
    }
    knots[n + 1] = 1.0;
    values[n + 1] = hi;
    for (double v : values) {
      if (!std::isfinite(v)) throw Error("AxisMap: non-finite sample");
    }
    fn_ = PiecewiseLinear(std::move(knots), std::move(values));
  }

  /// Samples a continuous map at the pixel centers of an n-pixel axis.
  static AxisMap sample(const PiecewiseLinear& f, int n) {
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = f((i + 0.5) / n);
    return AxisMap(std::move(s), f(0.0), f(1.0));
  }

  static AxisMap identity(int n) { return sample(PiecewiseLinear({0.0, 1.0}, {0.0, 1.0}), n); }

  int size() const { return static_cast<int>(fn_.values().size()) - 2; }
  double operator[](int i) const { return fn_.values()[i + 1]; }
  std::span<const double> samples() const {
    return std::span<const double>(fn_.values()).subspan(1, size());
  }
  double lo() const { return fn_.values().front(); }
  double hi() const { return fn_.values().back(); }

  /// Backward coordinate at normalized output position z.
  double operator()(double z) const { return fn_(z); }
  /// Output position whose backward coordinate is v.
  double inverse(double v) const { return fn_.inverse(v); }

  const PiecewiseLinear& function() const { return fn_; }

 private:
  PiecewiseLinear fn_;
};

struct SeparableWarp {
  AxisMap tinv_x;
  AxisMap tinv_y;
  int src_w = 0;
  int src_h = 0;

  int out_w() const { return tinv_x.size(); }
  int out_h() const { return tinv_y.size(); }

  Point backward(Point out) const { return {tinv_x(out.x), tinv_y(out.y)}; }

  static SeparableWarp identity(int src_w, int src_h, int out_w, int out_h) {
    return {AxisMap::identity(out_w), AxisMap::identity(out_h), src_w, src_h};
  }
};

/// Node positions {0, cell centers, 1} of an n-cell axis, normalized.
inline std::vector<double> grid_nodes(int n) {
  std::vector<double> u(n + 2);
  u[0] = 0.0;
  for (int c = 0; c < n; ++c) u[c + 1] = (c + 0.5) / n;
  u[n + 1] = 1.0;
  return u;
}

namespace detail {

// Saliency and saliency-times-coordinate over the padded range
// [-pad, n + pad). Without anti-crop the padding carries no mass.
struct PaddedAxis {
  int pad = 0;
  std::vector<double> mass;
  std::vector<double> moment;
};

inline PaddedAxis pad_axis(std::span<const double> s, int pad, bool anti_crop) {
  const int n = static_cast<int>(s.size());
  PaddedAxis p;
  p.pad = pad;
  p.mass.assign(n + 2 * pad, 0.0);
  p.moment.assign(n + 2 * pad, 0.0);
  for (int j = -pad; j < n + pad; ++j) {
    const bool inside = j >= 0 && j < n;
    if (!inside && !anti_crop) continue;
    const double m = s[reflect_index(j, n)];
    p.mass[j + pad] = m;
    p.moment[j + pad] = m * ((j + 0.5) / n);
  }
  return p;
}

inline double ratio_or_throw(double num, double den, const char* what) {
  if (!(den > 0.0)) {
    throw Error(std::string(what) + ": zero kernel-weighted saliency (degenerate saliency)");
  }
  return num / den;
}

}  // namespace detail

/// Backward map of one axis at grid resolution, as a continuous function
/// over the nodes {0, cell centers, 1}.
inline PiecewiseLinear backward_axis_nodes(const SaliencyProfile1D& s,
                                           const AttractionKernel& kernel, bool anti_crop) {
  const int n = s.size();
  if (!(s.sum() > 0.0)) throw Error("backward map: degenerate (all-zero) profile");
  const int r = kernel.radius();
  const auto p = detail::pad_axis(s.values(), r, anti_crop);
  const auto& it = kernel.integer_taps();
  const auto& ht = kernel.half_taps();

  std::vector<double> values(n + 2);
  // Edge nodes sit on cell boundaries: half-integer offsets to cell centers.
  auto edge = [&](int boundary) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 2 * r; ++k) {
      const int j = boundary - r + k + p.pad;
      num += ht[k] * p.moment[j];
      den += ht[k] * p.mass[j];
    }
    return detail::ratio_or_throw(num, den, "backward map");
  };
  values[0] = edge(0);
  for (int c = 0; c < n; ++c) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= 2 * r; ++k) {
      const int j = c - r + k + p.pad;
      num += it[k] * p.moment[j];
      den += it[k] * p.mass[j];
    }
    values[c + 1] = detail::ratio_or_throw(num, den, "backward map");
  }
  values[n + 1] = edge(n);
  // With mirrored mass every node lies in [0, 1] exactly; only round-off
  // (a few ulps at the edges) can push a ratio outside.
  if (anti_crop) {
    for (double& v : values) v = std::clamp(v, 0.0, 1.0);
  }
  return PiecewiseLinear(grid_nodes(n), std::move(values));
}

inline SeparableWarp build_separable_backward_map(const SaliencyProfile1D& s_x,
                                                  const SaliencyProfile1D& s_y,
                                                  const AttractionKernel& kernel, int out_w,
                                                  int out_h, int src_w, int src_h,
                                                  bool anti_crop = true) {
  if (out_w < 1 || out_h < 1 || src_w < 1 || src_h < 1) {
    throw Error("build_separable_backward_map: dimensions must be positive");
  }
  return {AxisMap::sample(backward_axis_nodes(s_x, kernel, anti_crop), out_w),
          AxisMap::sample(backward_axis_nodes(s_y, kernel, anti_crop), out_h), src_w, src_h};
}

/// General (nonseparable) backward map. The grid-level map lives on the
/// (rows+2) x (cols+2) node lattice and is bilinearly interpolated.
class NonseparableWarp {
 public:
  NonseparableWarp(std::vector<double> node_x, std::vector<double> node_y,
                   std::vector<Point> node_map, int src_w, int src_h, int out_w, int out_h)
      : node_x_(std::move(node_x)),
        node_y_(std::move(node_y)),
        node_map_(std::move(node_map)),
        src_w_(src_w),
        src_h_(src_h),
        out_w_(out_w),
        out_h_(out_h) {
    grid_.resize(static_cast<std::size_t>(out_w) * out_h);
    for (int j = 0; j < out_h; ++j) {
      for (int i = 0; i < out_w; ++i) {
        grid_[static_cast<std::size_t>(j) * out_w + i] =
            backward({(i + 0.5) / out_w, (j + 0.5) / out_h});
      }
    }
  }

  int src_w() const { return src_w_; }
  int src_h() const { return src_h_; }
  int out_w() const { return out_w_; }
  int out_h() const { return out_h_; }

  /// Backward coordinate at output pixel center (i, j).
  Point at(int i, int j) const { return grid_[static_cast<std::size_t>(j) * out_w_ + i]; }

  /// Backward coordinate at an arbitrary normalized output point.
  Point backward(Point q) const {
    const auto [kx, tx] = locate(node_x_, q.x);
    const auto [ky, ty] = locate(node_y_, q.y);
    const std::size_t stride = node_x_.size();
    const Point a = node_map_[ky * stride + kx], b = node_map_[ky * stride + kx + 1];
    const Point c = node_map_[(ky + 1) * stride + kx], d = node_map_[(ky + 1) * stride + kx + 1];
    auto lerp2 = [&](double va, double vb, double vc, double vd) {
      return (1 - ty) * ((1 - tx) * va + tx * vb) + ty * ((1 - tx) * vc + tx * vd);
    };
    return {lerp2(a.x, b.x, c.x, d.x), lerp2(a.y, b.y, c.y, d.y)};
  }

  const std::vector<Point>& grid() const { return grid_; }

 private:
  static std::pair<std::size_t, double> locate(const std::vector<double>& nodes, double z) {
    z = std::clamp(z, nodes.front(), nodes.back());
    auto it = std::upper_bound(nodes.begin(), nodes.end(), z);
    std::size_t k = static_cast<std::size_t>(it - nodes.begin());
    k = std::min(k == 0 ? 0 : k - 1, nodes.size() - 2);
    return {k, (z - nodes[k]) / (nodes[k + 1] - nodes[k])};
  }

  std::vector<double> node_x_;
  std::vector<double> node_y_;
  std::vector<Point> node_map_;
  std::vector<Point> grid_;
  int src_w_, src_h_, out_w_, out_h_;
};

inline NonseparableWarp build_nonseparable_backward_map(const SaliencyGrid2D& s,
                                                        const AttractionKernel& kernel,
                                                        int out_w, int out_h, int src_w,
                                                        int src_h, bool anti_crop = true) {
  if (out_w < 1 || out_h < 1 || src_w < 1 || src_h < 1) {
    throw Error("build_nonseparable_backward_map: dimensions must be positive");
  }
  if (!(s.sum() > 0.0)) throw Error("backward map: degenerate (all-zero) saliency grid");
  const int rows = s.rows(), cols = s.cols(), r = kernel.radius();
  const int pw = cols + 2 * r, ph = rows + 2 * r;

  std::vector<double> mass(static_cast<std::size_t>(pw) * ph, 0.0);
  for (int jy = -r; jy < rows + r; ++jy) {
    for (int jx = -r; jx < cols + r; ++jx) {
      const bool inside = jx >= 0 && jx < cols && jy >= 0 && jy < rows;
      if (!inside && !anti_crop) continue;
      mass[static_cast<std::size_t>(jy + r) * pw + jx + r] =
          s.at(reflect_index(jy, rows), reflect_index(jx, cols));
    }
  }

  // Node positions in cell units: 0, c + 0.5, n.
  auto node_cells = [](int n) {
    std::vector<double> u(n + 2);
    u[0] = 0.0;
    for (int c = 0; c < n; ++c) u[c + 1] = c + 0.5;
    u[n + 1] = n;
    return u;
  };
  const auto ux = node_cells(cols), uy = node_cells(rows);

  std::vector<Point> node_map(ux.size() * uy.size());
  std::vector<double> wx(pw), wy(ph);
  for (std::size_t ny = 0; ny < uy.size(); ++ny) {
    for (int jy = 0; jy < ph; ++jy) wy[jy] = kernel.weight((jy - r + 0.5) - uy[ny]);
    for (std::size_t nx = 0; nx < ux.size(); ++nx) {
      for (int jx = 0; jx < pw; ++jx) wx[jx] = kernel.weight((jx - r + 0.5) - ux[nx]);
      double den = 0.0, num_x = 0.0, num_y = 0.0;
      for (int jy = 0; jy < ph; ++jy) {
        if (wy[jy] == 0.0) continue;
        const double y = (jy - r + 0.5) / rows;
        const double* row = mass.data() + static_cast<std::size_t>(jy) * pw;
        for (int jx = 0; jx < pw; ++jx) {
          if (wx[jx] == 0.0) continue;
          const double w = row[jx] * wx[jx] * wy[jy];
          den += w;
          num_x += w * ((jx - r + 0.5) / cols);
          num_y += w * y;
        }
      }
      Point p{detail::ratio_or_throw(num_x, den, "backward map"),
              detail::ratio_or_throw(num_y, den, "backward map")};
      if (anti_crop) p = {std::clamp(p.x, 0.0, 1.0), std::clamp(p.y, 0.0, 1.0)};
      node_map[ny * ux.size() + nx] = p;
    }
  }
  return NonseparableWarp(grid_nodes(cols), grid_nodes(rows), std::move(node_map), src_w, src_h,
                          out_w, out_h);
}

using AnyWarp = std::variant<SeparableWarp, NonseparableWarp>;

inline ImageBuffer warp_image(const ImageBuffer& img, const SeparableWarp& warp) {
  if (img.width() != warp.src_w || img.height() != warp.src_h) {
    throw Error("warp_image: image dims do not match the warp's source dims");
  }
  const int out_w = warp.out_w(), out_h = warp.out_h();
  ImageBuffer out(out_w, out_h, img.channels());
  std::vector<detail::Tap> xs(out_w);
  for (int i = 0; i < out_w; ++i) xs[i] = detail::axis_tap(warp.tinv_x[i], img.width());
  for (int j = 0; j < out_h; ++j) {
    const auto ty = detail::axis_tap(warp.tinv_y[j], img.height());
    for (int i = 0; i < out_w; ++i) detail::blend(img, xs[i], ty, &out.at(i, j, 0));
  }
  return out;
}

inline ImageBuffer warp_image(const ImageBuffer& img, const NonseparableWarp& warp) {
  if (img.width() != warp.src_w() || img.height() != warp.src_h()) {
    throw Error("warp_image: image dims do not match the warp's source dims");
  }
  ImageBuffer out(warp.out_w(), warp.out_h(), img.channels());
  for (int j = 0; j < warp.out_h(); ++j) {
    for (int i = 0; i < warp.out_w(); ++i) {
      const Point p = warp.at(i, j);
      detail::blend(img, detail::axis_tap(p.x, img.width()), detail::axis_tap(p.y, img.height()),
                    &out.at(i, j, 0));
    }
  }
  return out;
}

inline ImageBuffer warp_image(const ImageBuffer& img, const AnyWarp& warp) {
  return std::visit([&](const auto& w) { return warp_image(img, w); }, warp);
}

/// Local area scale, output pixels per source pixel.
class MagnificationMap {
 public:
  MagnificationMap(int width, int height, std::vector<double> values)
      : width_(width), height_(height), values_(std::move(values)) {}

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * width_ + i]; }
  const std::vector<double>& values() const { return values_; }

  /// Mean magnification over the output pixels whose centers fall in
  /// [x1, x2) x [y1, y2), normalized output coordinates.
  double mean_over(double x1, double y1, double x2, double y2) const {
    double sum = 0.0;
    std::size_t count = 0;
    for (int j = 0; j < height_; ++j) {
      const double y = (j + 0.5) / height_;
      if (y < y1 || y >= y2) continue;
      for (int i = 0; i < width_; ++i) {
        const double x = (i + 0.5) / width_;
        if (x < x1 || x >= x2) continue;
        sum += at(i, j);
        ++count;
      }
    }
    if (count == 0) throw Error("MagnificationMap::mean_over: region covers no pixel center");
    return sum / count;
  }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

namespace detail {

// Source pixels spanned by each output pixel along one axis, measured between
// the output pixel's edges. The sum over the axis telescopes to the full
// backward range.
inline std::vector<double> axis_extent(const AxisMap& m, int src_n, char axis) {
  const int n = m.size();
  std::vector<double> ext(n);
  double prev = m(0.0);
  for (int i = 0; i < n; ++i) {
    const double next = m(static_cast<double>(i + 1) / n);
    const double d = (next - prev) * src_n;
    if (!(d > 0.0)) {
      throw Error(std::string("compute_magnification_map: non-positive derivative on axis ") +
                  axis + " at index " + std::to_string(i));
    }
    ext[i] = d;
    prev = next;
  }
  return ext;
}

}  // namespace detail

inline MagnificationMap compute_magnification_map(const SeparableWarp& warp) {
  const auto ex = detail::axis_extent(warp.tinv_x, warp.src_w, 'x');
  const auto ey = detail::axis_extent(warp.tinv_y, warp.src_h, 'y');
  std::vector<double> v(ex.size() * ey.size());
  for (std::size_t j = 0; j < ey.size(); ++j) {
    for (std::size_t i = 0; i < ex.size(); ++i) v[j * ex.size() + i] = 1.0 / (ex[i] * ey[j]);
  }
  return MagnificationMap(static_cast<int>(ex.size()), static_cast<int>(ey.size()), std::move(v));
}

inline MagnificationMap compute_magnification_map(const NonseparableWarp& warp) {
  const int w = warp.out_w(), h = warp.out_h();
  const double hx = 1.0 / w, hy = 1.0 / h;
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (int j = 0; j < h; ++j) {
    const double y = (j + 0.5) * hy;
    for (int i = 0; i < w; ++i) {
      const double x = (i + 0.5) * hx;
      const Point xl = warp.backward({x - 0.5 * hx, y}), xr = warp.backward({x + 0.5 * hx, y});
      const Point yl = warp.backward({x, y - 0.5 * hy}), yr = warp.backward({x, y + 0.5 * hy});
      // Jacobian in source pixels per output pixel.
      const double a = (xr.x - xl.x) * warp.src_w(), b = (yr.x - yl.x) * warp.src_w();
      const double c = (xr.y - xl.y) * warp.src_h(), d = (yr.y - yl.y) * warp.src_h();
      const double det = a * d - b * c;
      if (!(a > 0.0)) {
        throw Error("compute_magnification_map: non-positive derivative on axis x at index " +
                    std::to_string(j * w + i));
      }
      if (!(d > 0.0)) {
        throw Error("compute_magnification_map: non-positive derivative on axis y at index " +
                    std::to_string(j * w + i));
      }
      if (!(det > 0.0)) {
        throw Error("compute_magnification_map: non-positive Jacobian at index " +
                    std::to_string(j * w + i));
      }
      v[static_cast<std::size_t>(j) * w + i] = 1.0 / det;
    }
  }
  return MagnificationMap(w, h, std::move(v));
}

inline MagnificationMap compute_magnification_map(const AnyWarp& warp) {
  return std::visit([](const auto& w) { return compute_magnification_map(w); }, warp);
}

struct FoldoverViolation {
  char axis = 'x';
  int line = 0;   // row (axis x) or column (axis y) for nonseparable warps; 0 otherwise
  int index = 0;  // difference between sample index and index + 1; -1 is the leading edge
  double delta = 0.0;

  friend bool operator==(const FoldoverViolation&, const FoldoverViolation&) = default;
};

struct FoldoverReport {
  bool monotone = true;
  std::vector<FoldoverViolation> violations;
};

namespace detail {

inline void scan_axis(const AxisMap& m, char axis, FoldoverReport& report) {
  const auto& v = m.function().values();  // lo, samples..., hi
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double d = v[k] - v[k - 1];
    if (!(d > 0.0)) report.violations.push_back({axis, 0, static_cast<int>(k) - 2, d});
  }
}

}  // namespace detail

inline FoldoverReport check_foldover(const SeparableWarp& warp) {
  FoldoverReport report;
  detail::scan_axis(warp.tinv_x, 'x', report);
  detail::scan_axis(warp.tinv_y, 'y', report);
  report.monotone = report.violations.empty();
  return report;
}

inline FoldoverReport check_foldover(const NonseparableWarp& warp) {
  FoldoverReport report;
  for (int j = 0; j < warp.out_h(); ++j) {
    for (int i = 0; i + 1 < warp.out_w(); ++i) {
      const double d = warp.at(i + 1, j).x - warp.at(i, j).x;
      if (!(d > 0.0)) report.violations.push_back({'x', j, i, d});
    }
  }
  for (int i = 0; i < warp.out_w(); ++i) {
    for (int j = 0; j + 1 < warp.out_h(); ++j) {
      const double d = warp.at(i, j + 1).y - warp.at(i, j).y;
      if (!(d > 0.0)) report.violations.push_back({'y', i, j, d});
    }
  }
  report.monotone = report.violations.empty();
  return report;
}

inline FoldoverReport check_foldover(const AnyWarp& warp) {
  return std::visit([](const auto& w) { return check_foldover(w); }, warp);
}

}  // namespace fovea

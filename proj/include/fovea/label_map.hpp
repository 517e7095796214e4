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
 * @file label_map.hpp
 * @brief Box mapping between warped and original space, and IoU / GIoU.
 *
 * Boxes detected on a warped image are brought back to the original image by
 * pushing each edge coordinate through the backward map. Only separable
 * warps are supported: they send axis-aligned boxes to axis-aligned boxes.
 * The forward direction has no closed form and is obtained by inverting the
 * sampled, strictly increasing backward map.
 */
#pragma once

#include <algorithm>
#include <cmath>

#include "fovea/geometry.hpp"
#include "fovea/warp.hpp"

namespace fovea {

/// Read-only view of one monotone axis of a separable warp.
class AxisMapView {
 public:
  AxisMapView(const AxisMap& map, char axis) : map_(&map), axis_(axis) {
    const auto& v = map.function().values();
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (!(v[k] > v[k - 1])) {
        throw Error(std::string("AxisMapView: foldover on axis ") + axis + " at index " +
                    std::to_string(static_cast<int>(k) - 2));
      }
    }
  }

  char axis() const { return axis_; }
  double backward(double z) const { return (*map_)(z); }

  double forward(double v) const {
    if (v < map_->lo() || v > map_->hi()) {
      throw Error(std::string("warp_box_forward: coordinate outside the map range on axis ") +
                  axis_);
    }
    return map_->inverse(v);
  }

 private:
  const AxisMap* map_;
  char axis_;
};

inline BBox unwarp_box(const BBox& box, const SeparableWarp& warp) {
  if (box.space != Space::warped) throw Error("unwarp_box: box must be in warped space");
  const AxisMapView mx(warp.tinv_x, 'x'), my(warp.tinv_y, 'y');
  return BBox(mx.backward(box.x1), my.backward(box.y1), mx.backward(box.x2),
              my.backward(box.y2), Space::original);
}

inline BBox warp_box_forward(const BBox& box, const SeparableWarp& warp) {
  if (box.space != Space::original) {
    throw Error("warp_box_forward: box must be in original space");
  }
  const AxisMapView mx(warp.tinv_x, 'x'), my(warp.tinv_y, 'y');
  return BBox(mx.forward(box.x1), my.forward(box.y1), mx.forward(box.x2), my.forward(box.y2),
              Space::warped);
}

inline DetectionSet unwarp_detections(const DetectionSet& dets, const SeparableWarp& warp) {
  DetectionSet out(Space::original);
  for (std::size_t i = 0; i < dets.size(); ++i) {
    out.add(unwarp_box(dets.boxes()[i], warp), dets.scores()[i], dets.class_ids()[i]);
  }
  return out;
}

namespace detail {

inline void require_same_space(const BBox& a, const BBox& b, const char* what) {
  if (a.space != b.space) throw Error(std::string(what) + ": boxes are in different spaces");
}

inline double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

}  // namespace detail

inline double iou(const BBox& a, const BBox& b) {
  detail::require_same_space(a, b, "iou");
  const double inter = detail::intersection_area(a, b);
  return inter / (a.area() + b.area() - inter);
}

/// IoU minus the fraction of the tightest enclosing box not covered by the
/// union.
inline double giou(const BBox& a, const BBox& b) {
  detail::require_same_space(a, b, "giou");
  const double inter = detail::intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  // The hull contains the union; max() keeps round-off from inverting that.
  const double hull = std::max(uni, (std::max(a.x2, b.x2) - std::min(a.x1, b.x1)) *
                                        (std::max(a.y2, b.y2) - std::min(a.y1, b.y1)));
  return inter / uni - (hull - uni) / hull;
}

}  // namespace fovea

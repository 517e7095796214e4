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

#include <gtest/gtest.h>

#include <random>

#include "fovea/label_map.hpp"
#include "oracles.hpp"

namespace fovea {
namespace {

SeparableWarp KdeWarp(const DetectionSet& boxes, int out_w = 960, int out_h = 600) {
  const auto m = normalize_and_marginalize(kde_saliency(boxes, KdeParams{}, GridSpec{}));
  return build_separable_backward_map(m.x, m.y, AttractionKernel(), out_w, out_h, 1920, 1200);
}

SeparableWarp PeakWarp(double floor) {
  std::vector<double> x(51, floor), y(31, floor);
  x[25] = y[15] = 1.0;
  return build_separable_backward_map(SaliencyProfile1D(x).normalized(), SaliencyProfile1D(y).normalized(),
                                      AttractionKernel(), 960, 600, 1920, 1200);
}

BBox RandomBox(std::mt19937_64& rng, Space space) {
  const double x = 0.9 * unit_uniform(rng), y = 0.9 * unit_uniform(rng);
  return BBox(x, y, x + 0.005 + 0.095 * unit_uniform(rng), y + 0.005 + 0.095 * unit_uniform(rng), space);
}

TEST(UnwarpTest, IdentityRoundTrip) {
  const auto w = SeparableWarp::identity(1920, 1200, 960, 600);
  const BBox b(0.1, 0.2, 0.35, 0.5, Space::warped);
  const BBox u = unwarp_box(b, w);
  EXPECT_EQ(u.space, Space::original);
  EXPECT_NEAR(u.x1, 0.1, 1e-12);
  EXPECT_NEAR(u.y2, 0.5, 1e-12);
}

TEST(UnwarpTest, MagnifiedCenterShrinksOnUnwarp) {
  const auto w = PeakWarp(1e-3);
  const BBox b(0.45, 0.45, 0.55, 0.55, Space::warped);
  const BBox u = unwarp_box(b, w);
  EXPECT_LT(u.width(), b.width());
  EXPECT_LT(u.height(), b.height());
  EXPECT_NEAR(u.center().x, 0.5, 1e-9);
}

TEST(UnwarpTest, MatchesUntruncatedDenseOracle) {
  // The library truncates the kernel at 3 sigma and interpolates between
  // grid nodes; the oracle evaluates the full Gaussian sum directly at each
  // output coordinate. Errors are in original-image pixels.
  std::mt19937_64 rng(31);
  DetectionSet prev(Space::original);
  for (int k = 0; k < 4; ++k) prev.add(RandomBox(rng, Space::original));
  const auto sal = normalize_and_marginalize(kde_saliency(prev, KdeParams{}, GridSpec{}));
  const auto w = build_separable_backward_map(sal.x, sal.y, AttractionKernel(), 960, 600, 1920, 1200);
  double worst_x = 0, worst_y = 0;
  for (int k = 0; k < 100; ++k) {
    const BBox b = RandomBox(rng, Space::warped);
    const BBox u = unwarp_box(b, w);
    const double ox1 = oracle::weighted_mean_1d(sal.x.values(), 5.5, b.x1 * 51, true, false);
    const double ox2 = oracle::weighted_mean_1d(sal.x.values(), 5.5, b.x2 * 51, true, false);
    const double oy1 = oracle::weighted_mean_1d(sal.y.values(), 5.5, b.y1 * 31, true, false);
    const double oy2 = oracle::weighted_mean_1d(sal.y.values(), 5.5, b.y2 * 31, true, false);
    worst_x = std::max({worst_x, std::abs(u.x1 - ox1) * 1920, std::abs(u.x2 - ox2) * 1920});
    worst_y = std::max({worst_y, std::abs(u.y1 - oy1) * 1200, std::abs(u.y2 - oy2) * 1200});
  }
  EXPECT_LT(worst_x, 0.25);
  EXPECT_LT(worst_y, 0.25);
}

TEST(ForwardWarpTest, RoundTripsUnderKdeWarps) {
  std::mt19937_64 rng(32);
  for (int scene = 0; scene < 5; ++scene) {
    DetectionSet prev(Space::original);
    for (int k = 0; k < 5; ++k) prev.add(RandomBox(rng, Space::original));
    const auto w = KdeWarp(prev);
    for (int k = 0; k < 100; ++k) {
      const BBox o = RandomBox(rng, Space::original);
      const BBox back = unwarp_box(warp_box_forward(o, w), w);
      EXPECT_LT(std::abs(back.x1 - o.x1) * 960, 1e-6);
      EXPECT_LT(std::abs(back.y2 - o.y2) * 600, 1e-6);
      const BBox q = RandomBox(rng, Space::warped);
      const BBox fwd = warp_box_forward(unwarp_box(q, w), w);
      EXPECT_LT(std::abs(fwd.x2 - q.x2) * 960, 1e-6);
      EXPECT_LT(std::abs(fwd.y1 - q.y1) * 600, 1e-6);
    }
  }
}

TEST(ForwardWarpTest, InvertsAKnownMap) {
  // Backward map z -> z^2, so the forward map is sqrt.
  std::vector<double> s(1001);
  for (int i = 0; i < 1001; ++i) {
    const double z = (i + 0.5) / 1001;
    s[i] = z * z;
  }
  const AxisMap m(s, 0.0, 1.0);
  const SeparableWarp w{m, m, 100, 100};
  const BBox f = warp_box_forward(BBox(0.25, 0.25, 0.64, 0.64), w);
  EXPECT_NEAR(f.x1, 0.5, 1e-6);
  EXPECT_NEAR(f.x2, 0.8, 1e-6);
  EXPECT_EQ(f.space, Space::warped);
}

TEST(ForwardWarpTest, RequiresOriginalSpace) {
  const auto w = SeparableWarp::identity(100, 100, 50, 50);
  EXPECT_THROW(warp_box_forward(BBox(0.1, 0.1, 0.2, 0.2, Space::warped), w), Error);
  EXPECT_THROW(unwarp_box(BBox(0.1, 0.1, 0.2, 0.2, Space::original), w), Error);
}

TEST(UnwarpDetectionsTest, KeepsScoresAndClasses) {
  DetectionSet d({BBox(0.1, 0.1, 0.2, 0.2, Space::warped), BBox(0.5, 0.5, 0.9, 0.7, Space::warped)}, {0.9, 0.4},
                 {3, 7});
  const auto u = unwarp_detections(d, PeakWarp(1e-2));
  EXPECT_EQ(u.space(), Space::original);
  EXPECT_EQ(u.scores(), d.scores());
  EXPECT_EQ(u.class_ids(), d.class_ids());
}

TEST(UnwarpTest, RejectsFoldover) {
  std::vector<double> v(51, 1e-19);
  v[24] = v[33] = 1.0;
  const auto w = build_separable_backward_map(SaliencyProfile1D(v).normalized(), SaliencyProfile1D::uniform(31),
                                              AttractionKernel(0.3), 960, 600, 1920, 1200);
  EXPECT_THROW(unwarp_box(BBox(0.1, 0.1, 0.2, 0.2, Space::warped), w), Error);
}

TEST(IouTest, HandGeometry) {
  const BBox a(0, 0, 0.25, 0.25), b(0.125, 0.125, 0.375, 0.375);
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 7.0);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  const auto r = oracle::raster_overlap(a, b, 64);
  EXPECT_DOUBLE_EQ(iou(a, b), r.inter / r.uni);
  EXPECT_DOUBLE_EQ(giou(a, b), r.inter / r.uni - (r.hull - r.uni) / r.hull);
}

TEST(GiouTest, DisjointNeighborsGiveMinusOneThird) {
  const BBox a(0, 0, 0.125, 0.125), b(0.25, 0, 0.375, 0.125);
  EXPECT_DOUBLE_EQ(iou(a, b), 0.0);
  EXPECT_DOUBLE_EQ(giou(a, b), -1.0 / 3.0);
  const auto r = oracle::raster_overlap(a, b, 64);
  EXPECT_DOUBLE_EQ(r.inter / r.uni - (r.hull - r.uni) / r.hull, -1.0 / 3.0);
}

TEST(GiouTest, ApproachesMinusOneWithDistance) {
  double prev = 0.0;
  for (double d : {2.0, 10.0, 100.0}) {
    const BBox a(0, 0, 0.01, 0.01), b(0.01 * d, 0.01 * d, 0.01 * (d + 1), 0.01 * (d + 1));
    const double want = -1.0 + 2.0 / ((d + 1) * (d + 1));
    EXPECT_NEAR(giou(a, b), want, 1e-12);
    EXPECT_LT(giou(a, b), prev);
    prev = giou(a, b);
  }
  EXPECT_GT(prev, -1.0);
}

TEST(GiouTest, NeverExceedsIou) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 10000; ++k) {
    const BBox a = RandomBox(rng, Space::original), b = RandomBox(rng, Space::original);
    ASSERT_LE(giou(a, b), iou(a, b) + 1e-15);
    ASSERT_GE(giou(a, b), -1.0);
  }
}

TEST(GiouTest, RejectsSpaceMismatch) {
  const BBox a(0, 0, 0.5, 0.5), b(0, 0, 0.5, 0.5, Space::warped);
  EXPECT_THROW(iou(a, b), Error);
  EXPECT_THROW(giou(a, b), Error);
}

}  // namespace
}  // namespace fovea

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

#include "fovea/saliency.hpp"
#include "oracles.hpp"

namespace fovea {
namespace {

const GridSpec kGrid{31, 51, 1920, 1200};

DetectionSet PixelBoxes(std::initializer_list<std::array<double, 4>> xywh, int w = 1920, int h = 1200) {
  DetectionSet d(Space::original);
  for (const auto& b : xywh) d.add(BBox(b[0] / w, b[1] / h, (b[0] + b[2]) / w, (b[1] + b[3]) / h));
  return d;
}

DetectionSet RandomBoxes(std::mt19937_64& rng, int count, int w = 1920, int h = 1200) {
  std::uniform_real_distribution<double> px(0, w - 20), py(0, h - 20), size(8, 300);
  DetectionSet d(Space::original);
  for (int k = 0; k < count; ++k) {
    const double x = px(rng), y = py(rng);
    d.add(BBox(x / w, y / h, std::min<double>(x + size(rng), w) / w, std::min<double>(y + size(rng), h) / h));
  }
  return d;
}

TEST(KdeSaliencyTest, EmptySetIsTheFloor) {
  KdeParams p;
  const auto g = kde_saliency(DetectionSet{}, p, kGrid);
  for (double v : g.values()) EXPECT_DOUBLE_EQ(v, 1.0 / (35.0 * 35.0));
}

TEST(KdeSaliencyTest, CenteredBoxIsSymmetricWithCentralMaximum) {
  const GridSpec sq{31, 31, 1200, 1200};
  const auto g = kde_saliency(PixelBoxes({{550, 550, 100, 100}}, 1200, 1200), KdeParams{}, sq);
  double best = -1;
  int br = -1, bc = -1;
  for (int r = 0; r < 31; ++r) {
    for (int c = 0; c < 31; ++c) {
      EXPECT_NEAR(g.at(r, c), g.at(30 - r, c), 1e-15);
      EXPECT_NEAR(g.at(r, c), g.at(r, 30 - c), 1e-15);
      if (g.at(r, c) > best) best = g.at(r, c), br = r, bc = c;
    }
  }
  EXPECT_EQ(br, 15);
  EXPECT_EQ(bc, 15);
}

TEST(KdeSaliencyTest, MatchesDirectDensityOracle) {
  const auto boxes = PixelBoxes({{910, 550, 100, 100}});
  const auto g = kde_saliency(boxes, KdeParams{}, kGrid);
  for (int r = 0; r < 31; ++r) {
    for (int c = 0; c < 51; ++c) {
      const double want = oracle::kde_cell(boxes, 1.0, 64.0, 35, 31, 51, 1920, 1200, r, c);
      EXPECT_NEAR(g.at(r, c), want, 1e-9 * want);
    }
  }
  // Frozen from the oracle: center cell and top-left corner.
  EXPECT_NEAR(g.at(15, 25), 0.00084119449047035354, 1e-18);
  EXPECT_NEAR(g.at(0, 0), 0.00081632653061224493, 1e-18);
}

TEST(KdeSaliencyTest, LargeBoxesHaveLowPeakDensity) {
  const auto small = kde_saliency(PixelBoxes({{940, 580, 40, 40}}), KdeParams{}, kGrid);
  const auto large = kde_saliency(PixelBoxes({{760, 400, 400, 400}}), KdeParams{}, kGrid);
  EXPECT_GT(small.at(15, 25), large.at(15, 25));
}

TEST(KdeSaliencyTest, ScoreWeightingScalesTerms) {
  DetectionSet d({BBox(0.4, 0.4, 0.5, 0.5)}, {0.25});
  KdeParams p;
  const auto plain = kde_saliency(d, p, kGrid);
  p.score_weighting = true;
  const auto weighted = kde_saliency(d, p, kGrid);
  const double floor = p.floor();
  for (std::size_t k = 0; k < plain.values().size(); ++k) {
    EXPECT_NEAR(weighted.values()[k] - floor, 0.25 * (plain.values()[k] - floor), 1e-15);
  }
}

TEST(KdeSaliencyTest, RejectsWarpedBoxesAndBadParams) {
  DetectionSet w({BBox(0.1, 0.1, 0.2, 0.2, Space::warped)});
  EXPECT_THROW(kde_saliency(w, KdeParams{}, kGrid), Error);
  KdeParams bad;
  bad.bandwidth = 0;
  EXPECT_THROW(kde_saliency(DetectionSet{}, bad, kGrid), Error);
  EXPECT_THROW(kde_saliency(DetectionSet{}, KdeParams{}, GridSpec{31, 51, 0, 1200}), Error);
}

TEST(KdeSaliencyTest, AdditiveInBoxesAndStrictlyPositive) {
  std::mt19937_64 rng(11);
  const KdeParams p;
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = RandomBoxes(rng, 3), b = RandomBoxes(rng, 4);
    DetectionSet ab = a;
    for (const auto& box : b.boxes()) ab.add(box);
    const auto ga = kde_saliency(a, p, kGrid), gb = kde_saliency(b, p, kGrid), gab = kde_saliency(ab, p, kGrid);
    for (std::size_t k = 0; k < gab.values().size(); ++k) {
      EXPECT_NEAR(gab.values()[k] - p.floor(), (ga.values()[k] - p.floor()) + (gb.values()[k] - p.floor()), 1e-9);
      EXPECT_GT(gab.values()[k], 0.0);
    }
  }
}

TEST(KdeSaliencyTest, DimensionallyConsistentUnderCommonScaling) {
  // Densities carry 1/px^2, so the amplitude scales with s^2 alongside
  // bandwidth (s) and all lengths (s).
  std::mt19937_64 rng(12);
  const auto boxes = RandomBoxes(rng, 5);
  const double s = 2.0;
  KdeParams p, ps;
  ps.bandwidth = p.bandwidth * s;
  ps.amplitude = p.amplitude * s * s;
  const auto g1 = normalize(kde_saliency(boxes, p, kGrid));
  const auto g2 = normalize(kde_saliency(boxes, ps, GridSpec{31, 51, 3840, 2400}));
  for (std::size_t k = 0; k < g1.values().size(); ++k) EXPECT_NEAR(g1.values()[k], g2.values()[k], 1e-6);
}

TEST(NormalizeAndMarginalizeTest, UniformGrid) {
  const auto m = normalize_and_marginalize(SaliencyGrid2D(31, 51, 3.0));
  for (int c = 0; c < 51; ++c) EXPECT_NEAR(m.x[c], 1.0 / 51, 1e-15);
  for (int r = 0; r < 31; ++r) EXPECT_NEAR(m.y[r], 1.0 / 31, 1e-15);
}

TEST(NormalizeAndMarginalizeTest, PointMass) {
  std::vector<double> v(31 * 51, 0.0);
  v[7 * 51 + 40] = 2.5;
  const auto m = normalize_and_marginalize(SaliencyGrid2D(31, 51, v));
  for (int c = 0; c < 51; ++c) EXPECT_EQ(m.x[c], c == 40 ? 1.0 : 0.0);
  for (int r = 0; r < 31; ++r) EXPECT_EQ(m.y[r], r == 7 ? 1.0 : 0.0);
}

TEST(NormalizeAndMarginalizeTest, KdeMarginalsMatchSummationOracle) {
  const auto boxes = PixelBoxes({{910, 550, 100, 100}});
  const auto m = normalize_and_marginalize(kde_saliency(boxes, KdeParams{}, kGrid));
  double total = 0;
  for (int r = 0; r < 31; ++r) {
    for (int c = 0; c < 51; ++c) total += oracle::kde_cell(boxes, 1, 64, 35, 31, 51, 1920, 1200, r, c);
  }
  for (int c = 0; c < 51; ++c) {
    double col = 0;
    for (int r = 0; r < 31; ++r) col += oracle::kde_cell(boxes, 1, 64, 35, 31, 51, 1920, 1200, r, c);
    EXPECT_NEAR(m.x[c], col / total, 1e-12);
  }
  for (int r = 0; r < 31; ++r) {
    double row = 0;
    for (int c = 0; c < 51; ++c) row += oracle::kde_cell(boxes, 1, 64, 35, 31, 51, 1920, 1200, r, c);
    EXPECT_NEAR(m.y[r], row / total, 1e-12);
  }
  EXPECT_NEAR(m.x.sum(), 1.0, 1e-9);
  EXPECT_NEAR(m.y.sum(), 1.0, 1e-9);
  EXPECT_NEAR(m.grid.sum(), 1.0, 1e-9);
}

TEST(NormalizeAndMarginalizeTest, AllZeroIsDegenerate) {
  EXPECT_THROW(normalize_and_marginalize(SaliencyGrid2D(3, 3, 0.0)), Error);
}

TEST(DatasetPriorTest, HorizontalBandConcentratesRows) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> x(0, 1800), y(500, 640);
  DetectionSet d(Space::original);
  for (int k = 0; k < 200; ++k) {
    const double px = x(rng), py = y(rng);
    d.add(BBox(px / 1920, py / 1200, (px + 40) / 1920, (py + 40) / 1200));
  }
  const auto m = normalize_and_marginalize(dataset_prior(d, KdeParams{}, kGrid));
  int arg = 0;
  for (int r = 1; r < 31; ++r) if (m.y[r] > m.y[arg]) arg = r;
  const double row_center = (arg + 0.5) * 1200 / 31;
  EXPECT_GE(row_center, 500);
  EXPECT_LE(row_center, 680);
}

TEST(DatasetPriorTest, EmptyTrainingSetIsUniform) {
  const auto g = normalize(dataset_prior(DetectionSet{}, KdeParams{}, kGrid));
  for (double v : g.values()) EXPECT_NEAR(v, 1.0 / (31 * 51), 1e-15);
}

TEST(DatasetPriorTest, ModeNearGeneratingMean) {
  // 1000 boxes with centers ~ N((700, 420), 60^2): mode within one cell.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> cx(700, 60), cy(420, 60);
  std::uniform_real_distribution<double> size(20, 60);
  DetectionSet d(Space::original);
  for (int k = 0; k < 1000; ++k) {
    const double x = cx(rng), y = cy(rng), w = size(rng), h = size(rng);
    d.add(BBox((x - w / 2) / 1920, (y - h / 2) / 1200, (x + w / 2) / 1920, (y + h / 2) / 1200));
  }
  const auto g = dataset_prior(d, KdeParams{}, kGrid);
  int br = 0, bc = 0;
  for (int r = 0; r < 31; ++r) for (int c = 0; c < 51; ++c) if (g.at(r, c) > g.at(br, bc)) br = r, bc = c;
  const double cell_w = 1920.0 / 51, cell_h = 1200.0 / 31;
  EXPECT_LE(std::abs((bc + 0.5) * cell_w - 700), cell_w);
  EXPECT_LE(std::abs((br + 0.5) * cell_h - 420), cell_h);
}

TEST(TemporalPriorTest, AbsentIsUniform) {
  const auto g = temporal_prior(std::nullopt, KdeParams{}, kGrid);
  for (double v : g.values()) EXPECT_EQ(v, g.values()[0]);
}

TEST(TemporalPriorTest, DelegatesToKde) {
  const auto one = PixelBoxes({{300, 200, 60, 80}});
  EXPECT_EQ(temporal_prior(one, KdeParams{}, kGrid), kde_saliency(one, KdeParams{}, kGrid));
}

TEST(TemporalPriorTest, StackedBoxesDoubleTheGaussianTerm) {
  const auto one = PixelBoxes({{300, 200, 60, 80}});
  const auto two = PixelBoxes({{300, 200, 60, 80}, {300, 200, 60, 80}});
  const KdeParams p;
  const auto g1 = temporal_prior(one, p, kGrid), g2 = temporal_prior(two, p, kGrid);
  for (int r = 0; r < 31; ++r) {
    for (int c = 0; c < 51; ++c) {
      const double single = oracle::kde_cell(one, 1, 64, 35, 31, 51, 1920, 1200, r, c) - p.floor();
      EXPECT_NEAR(g2.at(r, c), p.floor() + 2 * single, 1e-15);
      EXPECT_NEAR(g2.at(r, c) - p.floor(), 2 * (g1.at(r, c) - p.floor()), 1e-15);
    }
  }
}

TEST(CombineSaliencyTest, EndpointsAndMean) {
  const auto si = normalize(kde_saliency(PixelBoxes({{100, 100, 50, 50}}), KdeParams{}, kGrid));
  const auto sd = normalize(kde_saliency(PixelBoxes({{1500, 900, 80, 30}}), KdeParams{}, kGrid));
  EXPECT_EQ(combine_saliency(si, sd, 1.0), si);
  EXPECT_EQ(combine_saliency(si, sd, 0.0), sd);
  const auto mid = combine_saliency(si, sd, 0.5);
  for (std::size_t k = 0; k < mid.values().size(); ++k) {
    EXPECT_DOUBLE_EQ(mid.values()[k], 0.5 * (si.values()[k] + sd.values()[k]));
  }
  EXPECT_NEAR(mid.sum(), 1.0, 1e-9);
}

TEST(CombineSaliencyTest, RejectsMismatchAndUnnormalized) {
  EXPECT_THROW(combine_saliency(SaliencyGrid2D::uniform(31, 51), SaliencyGrid2D::uniform(30, 51), 0.5), Error);
  EXPECT_THROW(combine_saliency(SaliencyGrid2D(31, 51, 1.0), SaliencyGrid2D::uniform(31, 51), 0.5), Error);
}

TEST(CombineSaliencyTest, PreservesNormalizationForRandomAlpha) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> a(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto si = normalize(kde_saliency(RandomBoxes(rng, 3), KdeParams{}, kGrid));
    const auto sd = normalize(kde_saliency(RandomBoxes(rng, 5), KdeParams{}, kGrid));
    EXPECT_NEAR(combine_saliency(si, sd, a(rng)).sum(), 1.0, 1e-9);
  }
}

TEST(JitterBoxesTest, ZeroJitterIsIdentity) {
  std::mt19937_64 rng(1);
  const auto d = RandomBoxes(rng, 10);
  EXPECT_EQ(jitter_boxes(d, 0.0, 99), d);
}

TEST(JitterBoxesTest, BoundedAndReproducible) {
  std::mt19937_64 rng(2);
  const auto d = RandomBoxes(rng, 20);
  const auto a = jitter_boxes(d, 50, 7), b = jitter_boxes(d, 50, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, jitter_boxes(d, 50, 8));
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double dx = (a.boxes()[k].x1 - d.boxes()[k].x1) * 1920;
    const double dy = (a.boxes()[k].y1 - d.boxes()[k].y1) * 1200;
    EXPECT_LE(std::abs(dx), 50 + 1e-9);
    EXPECT_LE(std::abs(dy), 50 + 1e-9);
    EXPECT_NEAR(a.boxes()[k].width(), d.boxes()[k].width(), 1e-12);
  }
}

TEST(JitterBoxesTest, UniformMoments) {
  // U(-j, j): mean 0, variance j^2 / 3.
  DetectionSet one({BBox(0.5, 0.5, 0.6, 0.6)});
  const double j = 200;
  double sum = 0, sq = 0;
  const int n = 20000;
  for (int seed = 0; seed < n; ++seed) {
    const double dx = (jitter_boxes(one, j, seed).boxes()[0].x1 - 0.5) * 1920;
    sum += dx;
    sq += dx * dx;
  }
  const double mean = sum / n, var = sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 3.0);  // ~ 2.3 standard errors
  EXPECT_NEAR(var / (j * j / 3), 1.0, 0.05);
}

TEST(JitterBoxesTest, NotClippedToFrame) {
  DetectionSet edge({BBox(0.0, 0.0, 0.01, 0.01)});
  bool left_of_frame = false;
  for (int seed = 0; seed < 20; ++seed) left_of_frame |= jitter_boxes(edge, 100, seed).boxes()[0].x1 < 0;
  EXPECT_TRUE(left_of_frame);
  EXPECT_THROW(jitter_boxes(edge, -1, 0), Error);
}

}  // namespace
}  // namespace fovea

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
 * @file synth_eval.hpp
 * @brief Synthetic-scene evaluation of temporal-prior magnification.
 *
 * A scene is a 1920x1200 frame of solid rectangles with known boxes. Each
 * frame is warped in si mode with jittered copies of the true boxes standing
 * in for the previous frame's detections. Jitter is applied as an antithetic
 * pair (offsets +d and -d from one draw) and the pair is averaged, so terms
 * odd in the offset cancel. By default each box size gets its own scene:
 * a box's magnification then does not depend on where the other boxes were
 * jittered to. Every true box is scored by
 *
 *   mean_magnification  warped box area / source box area, in output pixels
 *                       per source pixel (uniform downsampling gives scale^2)
 *   roundtrip_error_px  max edge deviation of unwarp(forward(box)) from the
 *                       box, in source pixels
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fovea/label_map.hpp"
#include "fovea/pipeline.hpp"
#include "fovea/saliency.hpp"

namespace fovea {

struct SynthEvalOptions {
  std::vector<double> jitters{0, 10, 25, 50, 100, 200};
  std::vector<int> box_sizes{40, 400};  // square boxes, px
  int image_w = 1920;
  int image_h = 1200;
  // Keeps every box, even fully jittered, clear of the frame border.
  int border_margin = 250;
  // Minimum gap between boxes, px.
  int min_gap = 150;
  // One scene per box size instead of one scene holding all of them.
  bool isolate_boxes = true;
};

struct SynthScene {
  ImageBuffer image;
  DetectionSet boxes;
};

struct SynthRow {
  std::uint64_t seed = 0;
  int box_index = 0;
  int box_w = 0;
  int box_h = 0;
  double jitter = 0.0;
  double mean_magnification = 0.0;
  double uniform_magnification = 0.0;
  double roundtrip_error_px = 0.0;
};

inline SynthScene make_synthetic_scene(std::uint64_t seed, const SynthEvalOptions& opts = {}) {
  std::mt19937_64 rng(seed);
  const double W = opts.image_w, H = opts.image_h;
  std::vector<std::array<double, 4>> placed;  // pixel x1, y1, x2, y2
  for (int size : opts.box_sizes) {
    const double lo_x = opts.border_margin, hi_x = W - opts.border_margin - size;
    const double lo_y = opts.border_margin, hi_y = H - opts.border_margin - size;
    if (hi_x < lo_x || hi_y < lo_y) throw Error("make_synthetic_scene: box does not fit the frame");
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      const double x = std::floor(lo_x + unit_uniform(rng) * (hi_x - lo_x));
      const double y = std::floor(lo_y + unit_uniform(rng) * (hi_y - lo_y));
      const std::array<double, 4> cand{x, y, x + size, y + size};
      ok = std::all_of(placed.begin(), placed.end(), [&](const auto& p) {
        return cand[0] >= p[2] + opts.min_gap || p[0] >= cand[2] + opts.min_gap ||
               cand[1] >= p[3] + opts.min_gap || p[1] >= cand[3] + opts.min_gap;
      });
      if (ok) placed.push_back(cand);
    }
    if (!ok) throw Error("make_synthetic_scene: could not place boxes without overlap");
  }

  ImageBuffer img(opts.image_w, opts.image_h, 3, 0.5f);
  DetectionSet boxes(Space::original);
  for (std::size_t k = 0; k < placed.size(); ++k) {
    const auto& p = placed[k];
    float color[3];
    for (float& c : color) c = static_cast<float>(0.1 + 0.8 * unit_uniform(rng));
    for (int y = static_cast<int>(p[1]); y < static_cast<int>(p[3]); ++y) {
      for (int x = static_cast<int>(p[0]); x < static_cast<int>(p[2]); ++x) {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = color[c];
      }
    }
    boxes.add(BBox(p[0] / W, p[1] / H, p[2] / W, p[3] / H), 1.0, static_cast<int>(k));
  }
  return {std::move(img), std::move(boxes)};
}

/// Seed of the jitter draw for a scene. One draw is shared by the whole
/// sweep, so each box's offset is the same direction scaled by j.
inline std::uint64_t jitter_seed_for(std::uint64_t scene_seed) {
  return scene_seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
}

/// Reflects jittered boxes through their originals (offset d becomes -d).
inline DetectionSet mirror_jitter(const DetectionSet& original, const DetectionSet& jittered) {
  DetectionSet out(original.space());
  for (std::size_t k = 0; k < original.size(); ++k) {
    const BBox& a = original.boxes()[k];
    const BBox& j = jittered.boxes()[k];
    out.add(BBox(2 * a.x1 - j.x1, 2 * a.y1 - j.y1, 2 * a.x2 - j.x2, 2 * a.y2 - j.y2, a.space),
            original.scores()[k], original.class_ids()[k]);
  }
  return out;
}

/// si-mode frame with `previous` standing in for last frame's detections.
inline FrameResult synth_frame(const SynthScene& scene, const DetectionSet& previous,
                               PipelineConfig config) {
  config.mode = SaliencyMode::si;
  SequenceState state;
  if (!previous.empty()) state.previous = previous;
  return process_frame(scene.image, state, config);
}

namespace detail {

inline void score_scene(const SynthScene& scene, std::uint64_t scene_seed,
                        std::uint64_t report_seed, int index_offset, const PipelineConfig& config,
                        const std::vector<double>& jitters, std::vector<SynthRow>& rows) {
  const double W = scene.image.width(), H = scene.image.height();
  for (double j : jitters) {
    const DetectionSet plus =
        jitter_boxes(scene.boxes, j, jitter_seed_for(scene_seed), scene.image.width(),
                     scene.image.height());
    const DetectionSet minus = mirror_jitter(scene.boxes, plus);
    const FrameResult frames[2] = {synth_frame(scene, plus, config),
                                   synth_frame(scene, minus, config)};
    for (std::size_t k = 0; k < scene.boxes.size(); ++k) {
      const BBox& b = scene.boxes.boxes()[k];
      SynthRow row;
      row.seed = report_seed;
      row.box_index = index_offset + static_cast<int>(k);
      row.box_w = static_cast<int>(std::lround(b.width() * W));
      row.box_h = static_cast<int>(std::lround(b.height() * H));
      row.jitter = j;
      for (const FrameResult& f : frames) {
        const double ow = f.warp.out_w(), oh = f.warp.out_h();
        const BBox wb = warp_box_forward(b, f.warp);
        const BBox back = unwarp_box(wb, f.warp);
        row.mean_magnification +=
            0.5 * (wb.width() * ow * wb.height() * oh) / (b.width() * W * b.height() * H);
        row.uniform_magnification = (ow / W) * (oh / H);
        row.roundtrip_error_px =
            std::max({row.roundtrip_error_px, std::abs(back.x1 - b.x1) * W,
                      std::abs(back.x2 - b.x2) * W, std::abs(back.y1 - b.y1) * H,
                      std::abs(back.y2 - b.y2) * H});
      }
      rows.push_back(row);
    }
  }
}

}  // namespace detail

/// One row per (box, jitter), ordered by box then jitter when boxes are
/// isolated, by jitter then box otherwise.
inline std::vector<SynthRow> synth_eval(std::uint64_t scenario_seed, const PipelineConfig& config,
                                        const SynthEvalOptions& opts = {}) {
  std::vector<SynthRow> rows;
  if (!opts.isolate_boxes) {
    const SynthScene scene = make_synthetic_scene(scenario_seed, opts);
    detail::score_scene(scene, scenario_seed, scenario_seed, 0, config, opts.jitters, rows);
    return rows;
  }
  for (std::size_t k = 0; k < opts.box_sizes.size(); ++k) {
    SynthEvalOptions one = opts;
    one.box_sizes = {opts.box_sizes[k]};
    const std::uint64_t scene_seed = jitter_seed_for(scenario_seed) ^ (0x632BE59BD9B4E019ull * (k + 1));
    const SynthScene scene = make_synthetic_scene(scene_seed, one);
    detail::score_scene(scene, scene_seed, scenario_seed, static_cast<int>(k), config,
                        opts.jitters, rows);
  }
  return rows;
}

inline std::string synth_csv_header() {
  return "seed,box_index,box_w,box_h,jitter,mean_magnification,uniform_magnification,"
         "roundtrip_error_px\n";
}

inline std::string synth_csv_rows(const std::vector<SynthRow>& rows) {
  std::string s;
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%d,%g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.seed), r.box_index, r.box_w, r.box_h, r.jitter,
                  r.mean_magnification, r.uniform_magnification, r.roundtrip_error_px);
    s += buf;
  }
  return s;
}

}  // namespace fovea

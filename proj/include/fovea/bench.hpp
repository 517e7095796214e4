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

// Wall-clock timing of the pipeline stages on a synthetic 1920x1200 frame.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fovea/label_map.hpp"
#include "fovea/pipeline.hpp"
#include "fovea/synth_eval.hpp"

namespace fovea {

struct BenchStat {
  std::string component;
  int iterations = 0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

/// Median and nearest-rank 95th percentile.
inline BenchStat summarize(std::string component, std::vector<double> samples_ms) {
  if (samples_ms.empty()) throw Error("summarize: no samples");
  std::sort(samples_ms.begin(), samples_ms.end());
  const std::size_t n = samples_ms.size();
  const double median = n % 2 ? samples_ms[n / 2] : 0.5 * (samples_ms[n / 2 - 1] + samples_ms[n / 2]);
  const std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  return {std::move(component), static_cast<int>(n), median, samples_ms[std::max<std::size_t>(rank, 1) - 1]};
}

inline std::vector<double> time_ms(const std::function<void()>& fn, int iterations, int warmup) {
  for (int i = 0; i < warmup; ++i) fn();
  std::vector<double> out;
  out.reserve(iterations);
  for (int i = 0; i < iterations; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    out.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return out;
}

/// Times saliency build, warp-map build, si and uniform image warps, the
/// unwarp of 100 boxes and a full si frame. The last row is the si/uniform
/// image-warp time ratio (median and p95 columns hold ratios, not ms).
inline std::vector<BenchStat> bench(const PipelineConfig& config, int iterations, int warmup = 2) {
  if (iterations < 1) throw Error("bench: iterations must be >= 1");
  SynthEvalOptions opts;
  opts.box_sizes = {40, 80, 120, 200, 400};
  opts.border_margin = 50;
  opts.min_gap = 20;
  const SynthScene scene = make_synthetic_scene(config.seed, opts);
  const ImageBuffer& img = scene.image;
  const GridSpec spec{config.grid_rows, config.grid_cols, img.width(), img.height()};
  const KdeParams kde = config.effective_kde();
  const AttractionKernel kernel = config.kernel();
  const int ow = config.out_w(img.width()), oh = config.out_h(img.height());

  const Marginals m = normalize_and_marginalize(kde_saliency(scene.boxes, kde, spec));
  const SeparableWarp warp =
      build_separable_backward_map(m.x, m.y, kernel, ow, oh, img.width(), img.height(), config.anti_crop);

  std::vector<BBox> warped_boxes;
  std::mt19937_64 rng(config.seed);
  for (int k = 0; k < 100; ++k) {
    const double x = 0.9 * unit_uniform(rng), y = 0.9 * unit_uniform(rng);
    warped_boxes.emplace_back(x, y, x + 0.01 + 0.09 * unit_uniform(rng),
                              y + 0.01 + 0.09 * unit_uniform(rng), Space::warped);
  }

  PipelineConfig si = config;
  si.mode = SaliencyMode::si;
  SequenceState state;
  state.previous = scene.boxes;

  volatile double sink = 0.0;
  std::vector<BenchStat> stats;
  stats.push_back(summarize("saliency", time_ms([&] {
    sink = sink + normalize_and_marginalize(kde_saliency(scene.boxes, kde, spec)).x[0];
  }, iterations, warmup)));
  stats.push_back(summarize("warp_map", time_ms([&] {
    sink = sink + build_separable_backward_map(m.x, m.y, kernel, ow, oh, img.width(), img.height(),
                                               config.anti_crop).tinv_x[0];
  }, iterations, warmup)));
  stats.push_back(summarize("image_warp_si", time_ms([&] {
    sink = sink + warp_image(img, warp).at(0, 0, 0);
  }, iterations, warmup)));
  stats.push_back(summarize("image_warp_uniform", time_ms([&] {
    sink = sink + uniform_downsample(img, ow, oh).at(0, 0, 0);
  }, iterations, warmup)));
  stats.push_back(summarize("box_unwarp_100", time_ms([&] {
    for (const BBox& b : warped_boxes) sink = sink + unwarp_box(b, warp).x1;
  }, iterations, warmup)));
  stats.push_back(summarize("frame_si", time_ms([&] {
    sink = sink + process_frame(img, state, si).warped.at(0, 0, 0);
  }, iterations, warmup)));

  const BenchStat& w = stats[2];
  const BenchStat& u = stats[3];
  stats.push_back({"image_warp_si_over_uniform_ratio", iterations,
                   u.median_ms > 0 ? w.median_ms / u.median_ms : 0.0,
                   u.p95_ms > 0 ? w.p95_ms / u.p95_ms : 0.0});
  return stats;
}

inline std::string bench_csv(const std::vector<BenchStat>& stats) {
  std::string s = "component,iterations,median_ms,p95_ms\n";
  char buf[256];
  for (const auto& st : stats) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%.6f,%.6f\n", st.component.c_str(), st.iterations,
                  st.median_ms, st.p95_ms);
    s += buf;
  }
  return s;
}

}  // namespace fovea

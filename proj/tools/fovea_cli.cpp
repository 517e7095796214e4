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

// fovea: saliency-guided image magnification from the command line.
//
//   fovea warp-image --image in.png --config cfg.txt [--boxes dets.json] --out out.png
//                    [--emit-heatmap mag.pgm] [--emit-warp warp.csv]
//   fovea sequence --frames <dir> --detections <dir> --mode si|sd|sc --out <dir>
//   fovea synth-eval --seed N --jitter-sweep 0,10,25,50,100,200 --out report.csv
//   fovea bench --iters N --out bench.csv
//   fovea build-prior --annotations boxes.json --out prior.bin

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fovea/bench.hpp"
#include "fovea/fovea.hpp"
#include "fovea/io/detections.hpp"
#include "fovea/io/export.hpp"
#include "fovea/io/image_io.hpp"
#include "fovea/io/prior.hpp"
#include "fovea/synth_eval.hpp"

namespace fs = std::filesystem;
using namespace fovea;

namespace {

// --<key> overrides for every config-file key.
struct ConfigOverrides {
  std::map<std::string, std::string> values;

  // Call after the subcommand's own options; a key the subcommand already
  // defines (synth-eval's --seed) keeps the subcommand's meaning.
  void attach(CLI::App* cmd) {
    for (const char* key : kConfigKeys) {
      if (cmd->get_option_no_throw(std::string("--") + key) != nullptr) continue;
      cmd->add_option(std::string("--") + key, values[key], std::string("override config key ") + key);
    }
  }

  PipelineConfig apply(const std::string& config_path) const {
    PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    for (const auto& [k, v] : values) {
      if (!v.empty()) cfg.set(k, v);
    }
    cfg.validate();
    return cfg;
  }
};

std::optional<SaliencyGrid2D> load_prior_for(const PipelineConfig& cfg) {
  if (cfg.mode != SaliencyMode::sd && cfg.mode != SaliencyMode::sc) return std::nullopt;
  if (cfg.prior_path.empty()) {
    throw Error(std::string("mode ") + to_string(cfg.mode) + " requires --prior (or prior= in the config)");
  }
  return io::read_prior(cfg.prior_path);
}

int run_warp_image(const std::string& image_path, const std::string& config_path,
                   const std::string& boxes_path, const std::string& out_path,
                   const std::string& heatmap_path, const std::string& heatmap_csv,
                   const std::string& warp_path, const ConfigOverrides& ov) {
  const PipelineConfig cfg = ov.apply(config_path);
  const ImageBuffer img = io::read_image(image_path);
  SequenceState state;
  if (!boxes_path.empty()) state.previous = io::ingest_detections(boxes_path, img.width(), img.height());
  const auto prior = load_prior_for(cfg);
  const FrameResult r = process_frame(img, state, cfg, prior ? &*prior : nullptr);
  io::write_image(out_path, r.warped);
  if (!heatmap_path.empty()) io::write_magnification_pgm(heatmap_path, r.magnification);
  if (!heatmap_csv.empty()) io::write_text(heatmap_csv, io::magnification_csv(r.magnification));
  if (!warp_path.empty()) io::write_warp_csv(warp_path, r.warp);
  return 0;
}

int run_sequence(const std::string& frames_dir, const std::string& dets_dir,
                 const std::string& out_dir, const std::string& config_path,
                 const ConfigOverrides& ov) {
  const PipelineConfig cfg = ov.apply(config_path);
  const auto prior = load_prior_for(cfg);
  std::vector<fs::path> frames;
  for (const auto& e : fs::directory_iterator(frames_dir)) {
    if (e.is_regular_file() && io::is_image_path(e.path())) frames.push_back(e.path());
  }
  std::sort(frames.begin(), frames.end());
  if (frames.empty()) throw Error("no PNG/PPM/PGM frames in " + frames_dir);
  fs::create_directories(out_dir);

  std::string summary = "frame_index,frame,previous_detections,detections,min_magnification,max_magnification\n";
  SequenceState state;
  for (const fs::path& frame : frames) {
    const ImageBuffer img = io::read_image(frame);
    const FrameResult r = process_frame(img, state, cfg, prior ? &*prior : nullptr);
    const std::string stem = frame.stem().string();
    io::write_image(fs::path(out_dir) / (stem + ".png"), r.warped);
    io::write_warp_csv(fs::path(out_dir) / (stem + ".warp.csv"), r.warp);

    const fs::path det_path = fs::path(dets_dir) / (stem + ".json");
    const DetectionSet dets = fs::exists(det_path)
                                  ? io::ingest_detections(det_path, img.width(), img.height())
                                  : DetectionSet(Space::original);
    const auto [lo, hi] = std::minmax_element(r.magnification.values().begin(),
                                              r.magnification.values().end());
    summary += std::to_string(state.frame_index) + ',' + frame.filename().string() + ',' +
               std::to_string(state.previous ? state.previous->size() : 0) + ',' +
               std::to_string(dets.size()) + ',' + io::format_double(*lo) + ',' +
               io::format_double(*hi) + '\n';
    state = update_state(state, dets);
  }
  io::write_text(fs::path(out_dir) / "sequence.csv", summary);
  return 0;
}

int run_synth_eval(std::uint64_t seed, int scenes, const std::vector<double>& jitters,
                   const std::vector<int>& sizes, const std::string& out_path,
                   const std::string& config_path, const ConfigOverrides& ov) {
  const PipelineConfig cfg = ov.apply(config_path);
  SynthEvalOptions opts;
  opts.jitters = jitters;
  opts.box_sizes = sizes;
  std::string csv = synth_csv_header();
  std::map<std::pair<int, double>, std::pair<double, int>> agg;
  for (int s = 0; s < scenes; ++s) {
    const auto rows = synth_eval(seed + static_cast<std::uint64_t>(s), cfg, opts);
    csv += synth_csv_rows(rows);
    for (const auto& r : rows) {
      auto& a = agg[{r.box_w, r.jitter}];
      a.first += r.mean_magnification;
      a.second += 1;
    }
  }
  io::write_text(out_path, csv);
  std::printf("box_px,jitter_px,mean_magnification\n");
  for (const auto& [key, v] : agg) {
    std::printf("%d,%g,%.9f\n", key.first, key.second, v.first / v.second);
  }
  return 0;
}

int run_bench(int iters, int warmup, const std::string& out_path, const std::string& config_path,
              const ConfigOverrides& ov) {
  const PipelineConfig cfg = ov.apply(config_path);
  const std::string csv = bench_csv(bench(cfg, iters, warmup));
  io::write_text(out_path, csv);
  std::cout << csv;
  return 0;
}

int run_build_prior(const std::string& annotations, const std::string& out_path, int width,
                    int height, const std::string& config_path, const ConfigOverrides& ov) {
  const PipelineConfig cfg = ov.apply(config_path);
  const DetectionSet boxes = io::ingest_detections(annotations, width, height);
  const GridSpec spec{cfg.grid_rows, cfg.grid_cols, width, height};
  io::write_prior(out_path, normalize(dataset_prior(boxes, cfg.effective_kde(), spec)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saliency-guided image magnification"};
  app.require_subcommand(1);

  std::string config_path;

  auto* warp = app.add_subcommand("warp-image", "Warp one image");
  std::string image_path, boxes_path, out_path, heatmap_path, heatmap_csv, warp_path;
  ConfigOverrides warp_ov;
  warp->add_option("--image", image_path, "input PNG/PPM/PGM")->required();
  warp->add_option("--config", config_path, "key=value config file");
  warp->add_option("--boxes", boxes_path, "previous-frame detections (JSON)");
  warp->add_option("--out", out_path, "output image (.png/.ppm/.pgm)")->required();
  warp->add_option("--emit-heatmap", heatmap_path, "16-bit PGM magnification map");
  warp->add_option("--emit-heatmap-csv", heatmap_csv, "CSV magnification map");
  warp->add_option("--emit-warp", warp_path, "backward map CSV");
  warp_ov.attach(warp);

  auto* seq = app.add_subcommand("sequence", "Warp a frame sequence with temporal state");
  std::string frames_dir, dets_dir, seq_out;
  ConfigOverrides seq_ov;
  seq->add_option("--frames", frames_dir, "directory of frames")->required();
  seq->add_option("--detections", dets_dir, "directory of <frame>.json detections")->required();
  seq->add_option("--out", seq_out, "output directory")->required();
  seq->add_option("--config", config_path, "key=value config file");
  seq_ov.attach(seq);

  auto* synth = app.add_subcommand("synth-eval", "Jitter sweep on synthetic scenes");
  std::uint64_t synth_seed = 0;
  int scenes = 50;
  std::vector<double> jitters{0, 10, 25, 50, 100, 200};
  std::vector<int> sizes{40, 400};
  std::string synth_out;
  ConfigOverrides synth_ov;
  synth->add_option("--seed", synth_seed, "first scenario seed")->required();
  synth->add_option("--scenes", scenes, "number of scenario seeds")->check(CLI::PositiveNumber);
  synth->add_option("--jitter-sweep", jitters, "jitter values in px")->delimiter(',');
  synth->add_option("--box-sizes", sizes, "square box sizes in px")->delimiter(',');
  synth->add_option("--out", synth_out, "report CSV")->required();
  synth->add_option("--config", config_path, "key=value config file");
  synth_ov.attach(synth);

  auto* bench_cmd = app.add_subcommand("bench", "Time pipeline stages");
  int iters = 20, warmup = 2;
  std::string bench_out;
  ConfigOverrides bench_ov;
  bench_cmd->add_option("--iters", iters, "timed iterations")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmup", warmup, "untimed warm-up iterations")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--out", bench_out, "timing CSV")->required();
  bench_cmd->add_option("--config", config_path, "key=value config file");
  bench_ov.attach(bench_cmd);

  auto* prior_cmd = app.add_subcommand("build-prior", "Build the dataset-wide saliency prior");
  std::string annotations, prior_out;
  int width = 1920, height = 1200;
  ConfigOverrides prior_ov;
  prior_cmd->add_option("--annotations", annotations, "all training boxes (detection JSON)")->required();
  prior_cmd->add_option("--out", prior_out, "prior file")->required();
  prior_cmd->add_option("--width", width, "frame width of the annotations")->check(CLI::PositiveNumber);
  prior_cmd->add_option("--height", height, "frame height of the annotations")->check(CLI::PositiveNumber);
  prior_cmd->add_option("--config", config_path, "key=value config file");
  prior_ov.attach(prior_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*warp) {
      return run_warp_image(image_path, config_path, boxes_path, out_path, heatmap_path,
                            heatmap_csv, warp_path, warp_ov);
    }
    if (*seq) return run_sequence(frames_dir, dets_dir, seq_out, config_path, seq_ov);
    if (*synth) return run_synth_eval(synth_seed, scenes, jitters, sizes, synth_out, config_path, synth_ov);
    if (*bench_cmd) return run_bench(iters, warmup, bench_out, config_path, bench_ov);
    if (*prior_cmd) return run_build_prior(annotations, prior_out, width, height, config_path, prior_ov);
  } catch (const std::exception& e) {
    std::cerr << "fovea: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

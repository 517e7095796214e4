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
 * @file pipeline.hpp
 * @brief Per-frame magnification pipeline and its configuration.
 *
 * A frame is processed as: saliency (uniform, dataset prior, previous-frame
 * KDE, or their blend) -> normalize and marginalize -> separable backward
 * map -> warped image at scale * input size. Frames of one sequence must be
 * processed in order; the caller advances SequenceState after each frame
 * with that frame's detections.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "fovea/geometry.hpp"
#include "fovea/saliency.hpp"
#include "fovea/warp.hpp"

namespace fovea {

enum class SaliencyMode { sd, si, sc, uniform };

inline SaliencyMode parse_mode(const std::string& s) {
  if (s == "sd") return SaliencyMode::sd;
  if (s == "si") return SaliencyMode::si;
  if (s == "sc") return SaliencyMode::sc;
  if (s == "uniform") return SaliencyMode::uniform;
  throw Error("unknown mode '" + s + "' (expected sd, si, sc or uniform)");
}

inline const char* to_string(SaliencyMode m) {
  switch (m) {
    case SaliencyMode::sd: return "sd";
    case SaliencyMode::si: return "si";
    case SaliencyMode::sc: return "sc";
    case SaliencyMode::uniform: return "uniform";
  }
  return "?";
}

struct PipelineConfig {
  SaliencyMode mode = SaliencyMode::si;
  double scale = 0.5;
  KdeParams kde;  // kde.alpha is the S_I weight of the sc blend
  int grid_rows = kDefaultGridRows;
  int grid_cols = kDefaultGridCols;
  double sigma = kDefaultKernelSigma;
  bool anti_crop = true;
  std::uint64_t seed = 0;
  std::string prior_path;
  // When unset, K follows the attraction kernel's support.
  std::optional<int> kernel_size;

  AttractionKernel kernel() const { return AttractionKernel(sigma); }

  KdeParams effective_kde() const {
    KdeParams p = kde;
    p.kernel_size = kernel_size.value_or(kernel().support());
    return p;
  }

  int out_w(int src_w) const { return std::max(1, static_cast<int>(std::lround(scale * src_w))); }
  int out_h(int src_h) const { return std::max(1, static_cast<int>(std::lround(scale * src_h))); }

  void validate() const {
    if (!(scale > 0.0 && scale <= 1.0)) throw Error("config: scale must lie in (0, 1]");
    if (grid_rows < 1 || grid_cols < 1) throw Error("config: grid dims must be >= 1");
    effective_kde().validate();
    (void)kernel();
  }

  /// Applies one key=value setting. Unknown keys are an error.
  void set(const std::string& key, const std::string& value) {
    auto as_double = [&] {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size()) throw Error("config: '" + key + "' expects a number, got '" + value + "'");
      return v;
    };
    auto as_int = [&] {
      const double v = as_double();
      if (v != std::floor(v)) throw Error("config: '" + key + "' expects an integer");
      return static_cast<long long>(v);
    };
    auto as_bool = [&] {
      if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
      if (value == "0" || value == "false" || value == "off" || value == "no") return false;
      throw Error("config: '" + key + "' expects a boolean, got '" + value + "'");
    };
    if (key == "mode") mode = parse_mode(value);
    else if (key == "scale") scale = as_double();
    else if (key == "amplitude") kde.amplitude = as_double();
    else if (key == "bandwidth") kde.bandwidth = as_double();
    else if (key == "alpha") kde.alpha = as_double();
    else if (key == "kernel_size") kernel_size = static_cast<int>(as_int());
    else if (key == "score_weighting") kde.score_weighting = as_bool();
    else if (key == "grid_rows") grid_rows = static_cast<int>(as_int());
    else if (key == "grid_cols") grid_cols = static_cast<int>(as_int());
    else if (key == "sigma") sigma = as_double();
    else if (key == "anti_crop") anti_crop = as_bool();
    else if (key == "seed") seed = static_cast<std::uint64_t>(as_int());
    else if (key == "prior") prior_path = value;
    else throw Error("config: unknown key '" + key + "'");
  }
};

inline const char* const kConfigKeys[] = {"mode",      "scale",     "amplitude", "bandwidth",
                                          "alpha",     "kernel_size", "score_weighting",
                                          "grid_rows", "grid_cols", "sigma",     "anti_crop",
                                          "seed",      "prior"};

/// Flat key=value text; '#' starts a comment; blank lines are ignored.
inline PipelineConfig parse_config(const std::string& text, PipelineConfig base = {}) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config line " + std::to_string(lineno) + ": expected key=value");
    }
    base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

inline PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

struct SequenceState {
  std::optional<DetectionSet> previous;
  int frame_index = 0;
};

/// Replaces the previous detections and advances the frame index.
inline SequenceState update_state(const SequenceState& state, const DetectionSet& detections) {
  if (!detections.empty() && detections.space() != Space::original) {
    throw Error("update_state: detections must be unwarped to original space first");
  }
  return {detections, state.frame_index + 1};
}

struct FrameResult {
  ImageBuffer warped;
  SeparableWarp warp;
  SaliencyGrid2D saliency;  // normalized
  MagnificationMap magnification;
};

/// Saliency for one frame according to the configured mode, normalized.
inline SaliencyGrid2D frame_saliency(const SequenceState& state, const PipelineConfig& config,
                                     const SaliencyGrid2D* prior, int image_w, int image_h) {
  const GridSpec spec{config.grid_rows, config.grid_cols, image_w, image_h};
  const KdeParams kde = config.effective_kde();
  auto need_prior = [&]() -> const SaliencyGrid2D& {
    if (!prior) throw Error(std::string("mode ") + to_string(config.mode) + " requires a dataset prior");
    if (prior->rows() != config.grid_rows || prior->cols() != config.grid_cols) {
      throw Error("dataset prior dims do not match the configured grid");
    }
    return *prior;
  };
  switch (config.mode) {
    case SaliencyMode::uniform:
      return normalize(kde_saliency(DetectionSet{}, kde, spec));
    case SaliencyMode::sd:
      return normalize(need_prior());
    case SaliencyMode::si:
      return normalize(temporal_prior(state.previous, kde, spec));
    case SaliencyMode::sc: {
      const SaliencyGrid2D& sd = need_prior();
      return combine_saliency(normalize(temporal_prior(state.previous, kde, spec)), normalize(sd),
                              kde.alpha);
    }
  }
  throw Error("unreachable saliency mode");
}

inline FrameResult process_frame(const ImageBuffer& img, const SequenceState& state,
                                 const PipelineConfig& config,
                                 const SaliencyGrid2D* prior = nullptr) {
  config.validate();
  SaliencyGrid2D s = frame_saliency(state, config, prior, img.width(), img.height());
  Marginals m = normalize_and_marginalize(s);
  SeparableWarp warp =
      build_separable_backward_map(m.x, m.y, config.kernel(), config.out_w(img.width()),
                                   config.out_h(img.height()), img.width(), img.height(),
                                   config.anti_crop);
  ImageBuffer warped = warp_image(img, warp);
  MagnificationMap mag = compute_magnification_map(warp);
  return {std::move(warped), std::move(warp), std::move(m.grid), std::move(mag)};
}

}  // namespace fovea

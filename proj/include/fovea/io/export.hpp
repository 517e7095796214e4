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

// Warp and magnification exports.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fovea/io/image_io.hpp"
#include "fovea/warp.hpp"

namespace fovea::io {

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// "axis,index,value" rows: tinv_x per output column, then tinv_y per row.
inline std::string warp_csv(const SeparableWarp& warp) {
  std::string s = "axis,index,value\n";
  auto emit = [&](char axis, const AxisMap& m) {
    for (int i = 0; i < m.size(); ++i) {
      s += axis;
      s += ',' + std::to_string(i) + ',' + format_double(m[i]) + '\n';
    }
  };
  emit('x', warp.tinv_x);
  emit('y', warp.tinv_y);
  return s;
}

/// Parses the output of warp_csv back into a warp with the given source dims.
/// Edge values are not stored and are taken as 0 and 1.
inline SeparableWarp parse_warp_csv(const std::string& text, int src_w, int src_h) {
  std::vector<double> xs, ys;
  std::size_t pos = text.find('\n');
  if (pos == std::string::npos || text.substr(0, pos) != "axis,index,value") {
    throw Error("warp CSV: missing header");
  }
  ++pos;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    if (c1 != 1 || c2 == std::string::npos) throw Error("warp CSV: bad row '" + line + "'");
    const std::size_t idx = std::stoul(line.substr(c1 + 1, c2 - c1 - 1));
    const double v = std::stod(line.substr(c2 + 1));
    auto& dst = line[0] == 'x' ? xs : ys;
    if (line[0] != 'x' && line[0] != 'y') throw Error("warp CSV: bad axis in '" + line + "'");
    if (idx != dst.size()) throw Error("warp CSV: rows out of order");
    dst.push_back(v);
  }
  return {AxisMap(std::move(xs), 0.0, 1.0), AxisMap(std::move(ys), 0.0, 1.0), src_w, src_h};
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

inline void write_warp_csv(const std::filesystem::path& path, const SeparableWarp& warp) {
  write_text(path, warp_csv(warp));
}

inline constexpr double kMagnificationPgmScale = 4096.0;

/// 16-bit heatmap, value = round(mag * 4096) saturated to 65535.
inline void write_magnification_pgm(const std::filesystem::path& path,
                                    const MagnificationMap& mag) {
  std::vector<std::uint16_t> v(mag.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double q = std::round(mag.values()[i] * kMagnificationPgmScale);
    v[i] = static_cast<std::uint16_t>(std::clamp(q, 0.0, 65535.0));
  }
  write_pgm16(path, mag.width(), mag.height(), v);
}

/// One line per output row, comma-separated magnification values.
inline std::string magnification_csv(const MagnificationMap& mag) {
  std::string s;
  for (int j = 0; j < mag.height(); ++j) {
    for (int i = 0; i < mag.width(); ++i) {
      if (i) s += ',';
      s += format_double(mag.at(i, j));
    }
    s += '\n';
  }
  return s;
}

}  // namespace fovea::io

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

// Dataset prior file: one text line "FOVEA-SD v1 <rows> <cols>\n" followed
// by rows*cols little-endian IEEE-754 doubles in row-major order.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fovea/saliency.hpp"

namespace fovea::io {

inline constexpr double kPriorSumTolerance = 1e-6;

inline void write_prior(const std::filesystem::path& path, const SaliencyGrid2D& grid) {
  if (std::abs(grid.sum() - 1.0) > kPriorSumTolerance) {
    throw Error("write_prior: grid must be normalized");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "FOVEA-SD v1 " << grid.rows() << ' ' << grid.cols() << '\n';
  for (double v : grid.values()) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    unsigned char le[8];
    for (int k = 0; k < 8; ++k) le[k] = static_cast<unsigned char>(bits >> (8 * k));
    out.write(reinterpret_cast<const char*>(le), 8);
  }
  if (!out) throw Error("write failed: " + path.string());
}

inline SaliencyGrid2D read_prior(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open prior " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw Error("empty prior file " + path.string());
  std::istringstream hs(header);
  std::string magic, version;
  int rows = 0, cols = 0;
  if (!(hs >> magic >> version >> rows >> cols) || magic != "FOVEA-SD" || version != "v1") {
    throw Error("bad prior header in " + path.string());
  }
  if (rows < 1 || cols < 1) throw Error("bad prior dims in " + path.string());
  std::vector<double> values(static_cast<std::size_t>(rows) * cols);
  for (double& v : values) {
    unsigned char le[8];
    if (!in.read(reinterpret_cast<char*>(le), 8)) throw Error("truncated prior " + path.string());
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(le[k]) << (8 * k);
    v = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error("trailing bytes in prior " + path.string());
  }
  SaliencyGrid2D grid(rows, cols, std::move(values));
  if (std::abs(grid.sum() - 1.0) > kPriorSumTolerance) {
    throw Error("prior " + path.string() + " does not sum to 1");
  }
  return grid;
}

}  // namespace fovea::io

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

#pragma once

namespace fovea::perf {

// Median single-threaded si frame time (1920x1200 RGB in, 960x600 out) from
// `fovea bench --iters 30` on the reference machine, Release build.
// Re-measure and update when the reference machine changes.
inline constexpr double kReferenceFrameSiMedianMs = 12.85;

// Frame-time smoke bound: 4x the reference median, never above 50 ms.
inline constexpr double kFrameSiBoundMs =
    4.0 * kReferenceFrameSiMedianMs < 50.0 ? 4.0 * kReferenceFrameSiMedianMs : 50.0;

}  // namespace fovea::perf

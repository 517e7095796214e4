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

// Core library: geometry, saliency, warps, box mapping and the frame pipeline.
// The io/ headers are separate because image I/O pulls in libpng.
#pragma once

#include "fovea/geometry.hpp"
#include "fovea/label_map.hpp"
#include "fovea/pipeline.hpp"
#include "fovea/saliency.hpp"
#include "fovea/warp.hpp"

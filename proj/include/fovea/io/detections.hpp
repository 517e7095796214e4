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
 * @file detections.hpp
 * @brief Detection JSON files.
 *
 * A detection file is a JSON array of records
 *
 *     {"bbox": [x, y, w, h], "score": 0.9, "category_id": 2}
 *
 * with the box in pixels of the frame it belongs to. "score" and
 * "category_id" are optional. Boxes are converted to normalized original
 * space on ingestion.
 */
#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fovea/geometry.hpp"

namespace fovea::io {

class DetectionFileError : public Error {
 public:
  enum class Kind { unreadable, malformed_json, missing_key, invalid_value };

  DetectionFileError(Kind kind, const std::string& file, long record, const std::string& what)
      : Error(describe(file, record, what)), kind_(kind), file_(file), record_(record) {}

  Kind kind() const { return kind_; }
  const std::string& file() const { return file_; }
  /// Offending record index, or -1 for file-level errors.
  long record() const { return record_; }

 private:
  static std::string describe(const std::string& file, long record, const std::string& what) {
    std::string s = file;
    if (record >= 0) s += " record " + std::to_string(record);
    return s + ": " + what;
  }

  Kind kind_;
  std::string file_;
  long record_;
};

/// Parses detection records from JSON text. `name` is used in errors only.
inline DetectionSet parse_detections(const std::string& text, int image_w, int image_h,
                                     const std::string& name = "<memory>") {
  using Kind = DetectionFileError::Kind;
  if (image_w <= 0 || image_h <= 0) throw Error("parse_detections: frame dims must be positive");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DetectionFileError(Kind::malformed_json, name, -1, e.what());
  }
  if (!doc.is_array()) {
    throw DetectionFileError(Kind::malformed_json, name, -1, "top level must be an array");
  }

  DetectionSet out(Space::original);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const long idx = static_cast<long>(i);
    const auto& rec = doc[i];
    if (!rec.is_object()) {
      throw DetectionFileError(Kind::malformed_json, name, idx, "record must be an object");
    }
    if (!rec.contains("bbox")) throw DetectionFileError(Kind::missing_key, name, idx, "missing \"bbox\"");
    const auto& bb = rec["bbox"];
    if (!bb.is_array() || bb.size() != 4) {
      throw DetectionFileError(Kind::invalid_value, name, idx, "\"bbox\" must be [x, y, w, h]");
    }
    double v[4];
    for (int k = 0; k < 4; ++k) {
      if (!bb[k].is_number()) {
        throw DetectionFileError(Kind::invalid_value, name, idx, "\"bbox\" entries must be numbers");
      }
      v[k] = bb[k].get<double>();
      if (!std::isfinite(v[k])) {
        throw DetectionFileError(Kind::invalid_value, name, idx, "\"bbox\" entries must be finite");
      }
    }
    if (!(v[2] > 0.0 && v[3] > 0.0)) {
      throw DetectionFileError(Kind::invalid_value, name, idx, "box width and height must be > 0");
    }
    double score = 1.0;
    if (rec.contains("score")) {
      if (!rec["score"].is_number()) {
        throw DetectionFileError(Kind::invalid_value, name, idx, "\"score\" must be a number");
      }
      score = rec["score"].get<double>();
      if (!(score >= 0.0 && score <= 1.0)) {
        throw DetectionFileError(Kind::invalid_value, name, idx, "\"score\" must lie in [0,1]");
      }
    }
    int category = 0;
    if (rec.contains("category_id")) {
      if (!rec["category_id"].is_number_integer()) {
        throw DetectionFileError(Kind::invalid_value, name, idx, "\"category_id\" must be an integer");
      }
      category = rec["category_id"].get<int>();
    }
    out.add(BBox(v[0] / image_w, v[1] / image_h, (v[0] + v[2]) / image_w, (v[1] + v[3]) / image_h,
                 Space::original),
            score, category);
  }
  return out;
}

inline DetectionSet ingest_detections(const std::filesystem::path& path, int image_w, int image_h) {
  std::ifstream in(path);
  if (!in) {
    throw DetectionFileError(DetectionFileError::Kind::unreadable, path.string(), -1,
                             "cannot open file");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_detections(ss.str(), image_w, image_h, path.string());
}

/// Serializes boxes back to pixel [x, y, w, h] records.
inline std::string dump_detections(const DetectionSet& dets, int image_w, int image_h) {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const BBox& b = dets.boxes()[i];
    doc.push_back({{"bbox", {b.x1 * image_w, b.y1 * image_h, b.width() * image_w, b.height() * image_h}},
                   {"score", dets.scores()[i]},
                   {"category_id", dets.class_ids()[i]}});
  }
  return doc.dump(2);
}

}  // namespace fovea::io

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

// PNG (via libpng's simplified API) and binary PNM reading and writing.
// Consumers of this header link against libpng.
#pragma once

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <string>
#include <vector>

#include "fovea/geometry.hpp"

namespace fovea::io {

namespace detail {

inline std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& path, const std::string& header,
                        const std::vector<std::uint8_t>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
  if (!out) throw Error("write failed: " + path.string());
}

// Header token reader for binary PNM; skips whitespace and '#' comments.
class PnmHeader {
 public:
  PnmHeader(const std::vector<std::uint8_t>& bytes, const std::string& name)
      : bytes_(bytes), name_(name) {}

  std::string token() {
    skip();
    std::string t;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) t.push_back(static_cast<char>(bytes_[pos_++]));
    if (t.empty()) throw Error("truncated PNM header in " + name_);
    return t;
  }

  int number() {
    const std::string t = token();
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad PNM header in " + name_);
    }
    return std::stoi(t);
  }

  // Raster starts after exactly one whitespace byte following maxval.
  std::size_t raster_offset() const { return pos_ + 1; }

 private:
  void skip() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  const std::string& name_;
  std::size_t pos_ = 0;
};

inline ImageBuffer decode_pnm(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  PnmHeader h(bytes, name);
  const std::string magic = h.token();
  int channels = 0;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else throw Error("unsupported PNM type " + magic + " in " + name);
  const int w = h.number(), hgt = h.number(), maxval = h.number();
  if (w <= 0 || hgt <= 0 || maxval <= 0 || maxval > 65535) {
    throw Error("bad PNM dimensions in " + name);
  }
  const std::size_t count = static_cast<std::size_t>(w) * hgt * channels;
  const std::size_t bps = maxval > 255 ? 2 : 1;
  const std::size_t off = h.raster_offset();
  if (bytes.size() < off + count * bps) throw Error("truncated PNM raster in " + name);
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t p = off + i * bps;
    const unsigned v = bps == 1 ? bytes[p] : (unsigned(bytes[p]) << 8) | bytes[p + 1];
    data[i] = static_cast<float>(static_cast<double>(v) / maxval);
  }
  return ImageBuffer(w, hgt, channels, std::move(data));
}

inline ImageBuffer decode_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str())) {
    throw Error("cannot read PNG " + path.string() + ": " + image.message);
  }
  const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
  const bool alpha = image.format & PNG_FORMAT_FLAG_ALPHA;
  image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB)
                       : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
  const int channels = (color ? 3 : 1) + (alpha ? 1 : 0);
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error("cannot decode PNG " + path.string() + ": " + msg);
  }
  return ImageBuffer::from_u8(static_cast<int>(image.width), static_cast<int>(image.height),
                              channels, buf);
}

// Rec. 601 luma for writing color images to single-channel formats.
inline std::vector<std::uint8_t> to_gray_u8(const ImageBuffer& img) {
  if (img.channels() <= 2) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width()) * img.height());
    const auto all = img.to_u8();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = all[i * img.channels()];
    return out;
  }
  ImageBuffer gray(img.width(), img.height(), 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      gray.at(x, y, 0) = static_cast<float>(0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                                            0.114 * img.at(x, y, 2));
    }
  }
  return gray.to_u8();
}

inline std::vector<std::uint8_t> to_rgb_u8(const ImageBuffer& img) {
  const auto all = img.to_u8();
  const std::size_t n = static_cast<std::size_t>(img.width()) * img.height();
  std::vector<std::uint8_t> out(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const int src = img.channels() >= 3 ? c : 0;
      out[i * 3 + c] = all[i * img.channels() + src];
    }
  }
  return out;
}

}  // namespace detail

/// Reads PNG or binary PPM/PGM, detected from the file signature.
inline ImageBuffer read_image(const std::filesystem::path& path) {
  const auto bytes = detail::read_bytes(path);
  static constexpr std::uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSig, 8) == 0) {
    return detail::decode_png(path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P') return detail::decode_pnm(bytes, path.string());
  throw Error("unrecognized image format: " + path.string());
}

inline void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  switch (img.channels()) {
    case 1: image.format = PNG_FORMAT_GRAY; break;
    case 2: image.format = PNG_FORMAT_GA; break;
    case 3: image.format = PNG_FORMAT_RGB; break;
    default: image.format = PNG_FORMAT_RGBA; break;
  }
  const auto bytes = img.to_u8();
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, bytes.data(), 0, nullptr)) {
    throw Error("cannot write PNG " + path.string() + ": " + image.message);
  }
}

inline void write_ppm(const std::filesystem::path& path, const ImageBuffer& img) {
  detail::write_bytes(path,
                      "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                          "\n255\n",
                      detail::to_rgb_u8(img));
}

inline void write_pgm(const std::filesystem::path& path, const ImageBuffer& img) {
  detail::write_bytes(path,
                      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                          "\n255\n",
                      detail::to_gray_u8(img));
}

/// 16-bit big-endian PGM from raw samples.
inline void write_pgm16(const std::filesystem::path& path, int width, int height,
                        const std::vector<std::uint16_t>& values) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw Error("write_pgm16: value count does not match dims");
  }
  std::vector<std::uint8_t> body(values.size() * 2);
  for (std::size_t i = 0; i < values.size(); ++i) {
    body[2 * i] = static_cast<std::uint8_t>(values[i] >> 8);
    body[2 * i + 1] = static_cast<std::uint8_t>(values[i] & 0xff);
  }
  detail::write_bytes(path,
                      "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n",
                      body);
}

/// Format chosen from the extension: .png, .ppm or .pgm.
inline void write_image(const std::filesystem::path& path, const ImageBuffer& img) {
  const std::string ext = detail::lower_extension(path);
  if (ext == ".png") write_png(path, img);
  else if (ext == ".ppm") write_ppm(path, img);
  else if (ext == ".pgm") write_pgm(path, img);
  else throw Error("unsupported output image extension: " + path.string());
}

inline bool is_image_path(const std::filesystem::path& path) {
  const std::string ext = detail::lower_extension(path);
  return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

}  // namespace fovea::io

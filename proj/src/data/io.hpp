// Copyright 2026 The clsketch Authors
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

// File formats. Binary formats are little-endian.
//
//   model  : "CLNN" u32 version, u32 layer count, u32 dims..., f64 params...,
//            f64 mins[d], f64 maxs[d]
//   sketch : "CLSK" u32 version, u32 d, u32 m, u64 n, f64 scale, u64 seed,
//            u64 fingerprint of (m, d, scale, seed),
//            (f64 re, f64 im) x m
//   points : headerless CSV, one sample per row
//   images : PGM, P5 or P2 on input, 8-bit P5 on output

#ifndef CLSKETCH_DATA_IO_HPP_
#define CLSKETCH_DATA_IO_HPP_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "data/normalizer.hpp"
#include "denoise/image.hpp"
#include "nn/relu_net.hpp"
#include "sketch/sketch_state.hpp"

namespace clsk::data {

inline constexpr std::uint32_t kModelVersion = 1;
inline constexpr std::uint32_t kSketchVersion = 1;

/// Writes to a temporary file in the same directory, then renames it over
/// `path`, so a failed write leaves no output behind.
void write_file_atomic(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

/// Row-at-a-time CSV reader. Every row must have the same field count.
class CsvReader {
 public:
  explicit CsvReader(const std::string& path);

  /// False at end of file. Throws kFormat naming the line on bad input.
  bool next(std::vector<double>& row);
  std::size_t columns() const noexcept { return columns_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::string buf_;
  std::size_t columns_ = 0;
  std::size_t line_ = 0;
};

/// d x n, one column per CSV row.
Eigen::MatrixXd read_points_csv(const std::string& path);
/// One row per column of `points`, "%.17g" so values round-trip exactly.
void write_points_csv(const std::string& path, const Eigen::MatrixXd& points);

denoise::GrayImage read_pgm(const std::string& path);
denoise::GrayImage parse_pgm(const std::string& bytes);
/// 8-bit P5; intensities are clamped to [0, 1] and rounded.
void write_pgm(const std::string& path, const denoise::GrayImage& img);

struct Model {
  nn::ReluNet net;
  AffineNormalizer normalizer;
};

std::string encode_model(const Model& model);
Model decode_model(const std::string& bytes);
void write_model(const std::string& path, const Model& model);
Model read_model(const std::string& path);

std::string encode_sketch(const sketch::Sketch& sk);
sketch::Sketch decode_sketch(const std::string& bytes);
void write_sketch(const std::string& path, const sketch::Sketch& sk);
sketch::Sketch read_sketch(const std::string& path);

/// {"mins": [...], "maxs": [...]}
std::string normalizer_to_json(const AffineNormalizer& n);
AffineNormalizer normalizer_from_json(const std::string& text);
void write_normalizer(const std::string& path, const AffineNormalizer& n);
AffineNormalizer read_normalizer(const std::string& path);

}  // namespace clsk::data

#endif  // CLSKETCH_DATA_IO_HPP_

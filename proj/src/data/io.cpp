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

#include "data/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace clsk::data {

namespace {

constexpr std::uint32_t kMaxLayers = 1024;
constexpr std::uint32_t kMaxWidth = 1u << 24;

// Little-endian encoder.
class Writer {
 public:
  void bytes(const char* p, std::size_t n) { out_.append(p, n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(const std::string& bytes, const char* what) : b_(bytes), what_(what) {}

  void magic(const char (&m)[5]) {
    need(4);
    if (std::memcmp(b_.data() + pos_, m, 4) != 0) {
      fail(ErrorCode::kMagic, std::string("not a ") + what_ + " file (bad magic)");
    }
    pos_ += 4;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return b_.size() - pos_; }
  void need(std::size_t n) const {
    if (remaining() < n) {
      fail(ErrorCode::kTruncated, std::string(what_) + " file is truncated at byte " + std::to_string(b_.size()));
    }
  }
  void finish() const {
    require(remaining() == 0, ErrorCode::kFormat,
            std::string(what_) + " file has " + std::to_string(remaining()) + " trailing bytes");
  }

 private:
  const std::string& b_;
  const char* what_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, const std::string& path, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty() || !std::isfinite(v)) {
    fail(ErrorCode::kFormat, path + ":" + std::to_string(line) + ": cannot parse '" + std::string(field) +
                                 "' as a finite number");
  }
  return v;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  const fs::path tmp = target.string() + ".tmp" + std::to_string(rd() & 0xffffffu);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      fail(ErrorCode::kIo, "failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot move output into place at '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::kIo, "failed reading '" + path + "'");
  return ss.str();
}

CsvReader::CsvReader(const std::string& path) : path_(path), in_(path) {
  require(static_cast<bool>(in_), ErrorCode::kIo, "cannot open '" + path + "'");
}

bool CsvReader::next(std::vector<double>& row) {
  while (std::getline(in_, buf_)) {
    ++line_;
    const std::string_view text = trim(buf_);
    if (text.empty()) continue;
    row.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      row.push_back(parse_double(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start),
                                 path_, line_));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (columns_ == 0) columns_ = row.size();
    require(row.size() == columns_, ErrorCode::kFormat,
            path_ + ":" + std::to_string(line_) + ": expected " + std::to_string(columns_) + " fields, found " +
                std::to_string(row.size()));
    return true;
  }
  require(!in_.bad(), ErrorCode::kIo, "failed reading '" + path_ + "'");
  return false;
}

Eigen::MatrixXd read_points_csv(const std::string& path) {
  CsvReader reader(path);
  std::vector<double> row;
  std::vector<double> flat;
  while (reader.next(row)) flat.insert(flat.end(), row.begin(), row.end());
  require(!flat.empty(), ErrorCode::kFormat, "'" + path + "' contains no samples");
  const auto d = static_cast<Eigen::Index>(reader.columns());
  return Eigen::Map<const Eigen::MatrixXd>(flat.data(), d, static_cast<Eigen::Index>(flat.size()) / d);
}

void write_points_csv(const std::string& path, const Eigen::MatrixXd& points) {
  std::string out;
  out.reserve(static_cast<std::size_t>(points.size()) * 24);
  char buf[32];
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      if (r > 0) out.push_back(',');
      const int n = std::snprintf(buf, sizeof buf, "%.17g", points(r, c));
      out.append(buf, static_cast<std::size_t>(n));
    }
    out.push_back('\n');
  }
  write_file_atomic(path, out);
}

denoise::GrayImage parse_pgm(const std::string& bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&](const char* what) {
    skip_space();
    std::size_t v = 0;
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      v = v * 10 + static_cast<std::size_t>(bytes[pos] - '0');
      require(v <= (1u << 30), ErrorCode::kFormat, std::string("PGM ") + what + " is too large");
      ++pos;
    }
    if (pos == start) {
      if (pos >= bytes.size()) fail(ErrorCode::kTruncated, std::string("PGM ends before the ") + what);
      fail(ErrorCode::kFormat, std::string("PGM header: expected ") + what);
    }
    return v;
  };

  if (bytes.size() < 2) fail(ErrorCode::kTruncated, "PGM file is truncated");
  if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    fail(ErrorCode::kMagic, "not a PGM file (expected P5 or P2)");
  }
  const bool binary = bytes[1] == '5';
  pos = 2;
  const std::size_t width = number("width");
  const std::size_t height = number("height");
  const std::size_t maxval = number("maxval");
  require(width >= 1 && height >= 1, ErrorCode::kFormat, "PGM has zero size");
  require(maxval >= 1 && maxval <= 65535, ErrorCode::kFormat, "PGM maxval must lie in [1, 65535]");

  denoise::GrayImage img(width, height);
  const double scale = 1.0 / static_cast<double>(maxval);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    require(pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos])), ErrorCode::kTruncated,
            "PGM ends before the raster");
    ++pos;
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    const std::size_t need = width * height * bpp;
    require(bytes.size() - pos >= need, ErrorCode::kTruncated,
            "PGM raster is truncated: expected " + std::to_string(need) + " bytes");
    for (std::size_t i = 0; i < width * height; ++i) {
      std::size_t v = static_cast<unsigned char>(bytes[pos + i * bpp]);
      if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + i * bpp + 1]);
      require(v <= maxval, ErrorCode::kFormat, "PGM sample exceeds maxval");
      img.pixels[i] = static_cast<double>(v) * scale;
    }
  } else {
    for (std::size_t i = 0; i < width * height; ++i) {
      const std::size_t v = number("sample");
      require(v <= maxval, ErrorCode::kFormat, "PGM sample exceeds maxval");
      img.pixels[i] = static_cast<double>(v) * scale;
    }
  }
  return img;
}

denoise::GrayImage read_pgm(const std::string& path) { return parse_pgm(read_file(path)); }

void write_pgm(const std::string& path, const denoise::GrayImage& img) {
  require(img.width >= 1 && img.height >= 1 && img.pixels.size() == img.width * img.height, ErrorCode::kShape,
          "image buffer does not match its size");
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.reserve(out.size() + img.pixels.size());
  for (double p : img.pixels) {
    const double c = std::isfinite(p) ? std::clamp(p, 0.0, 1.0) : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(c * 255.0))));
  }
  write_file_atomic(path, out);
}

std::string encode_model(const Model& model) {
  const auto& dims = model.net.dims();
  require(model.normalizer.dim() == dims.front(), ErrorCode::kShape,
          "normalizer dimension does not match the model input");
  Writer w;
  w.bytes("CLNN", 4);
  w.u32(kModelVersion);
  w.u32(static_cast<std::uint32_t>(dims.size()));
  for (std::size_t v : dims) w.u32(static_cast<std::uint32_t>(v));
  for (double p : model.net.params()) w.f64(p);
  for (double v : model.normalizer.mins()) w.f64(v);
  for (double v : model.normalizer.maxs()) w.f64(v);
  return w.take();
}

Model decode_model(const std::string& bytes) {
  Reader r(bytes, "model");
  r.magic("CLNN");
  const std::uint32_t version = r.u32();
  require(version == kModelVersion, ErrorCode::kVersion,
          "model format version " + std::to_string(version) + " is not supported (expected " +
              std::to_string(kModelVersion) + ")");
  const std::uint32_t layers = r.u32();
  require(layers >= 2 && layers <= kMaxLayers, ErrorCode::kFormat, "model layer count is invalid");
  std::vector<std::size_t> dims(layers);
  for (auto& v : dims) {
    const std::uint32_t x = r.u32();
    require(x >= 1 && x <= kMaxWidth, ErrorCode::kFormat, "model layer width is invalid");
    v = x;
  }
  const std::size_t count = nn::ReluNet::param_count(dims);
  r.need(8 * (count + 2 * dims.front()));
  std::vector<double> params(count);
  for (double& p : params) p = r.f64();
  std::vector<double> mins(dims.front()), maxs(dims.front());
  for (double& v : mins) v = r.f64();
  for (double& v : maxs) v = r.f64();
  r.finish();
  try {
    return Model{nn::ReluNet(dims, std::move(params)), AffineNormalizer(std::move(mins), std::move(maxs))};
  } catch (const Error& e) {
    fail(ErrorCode::kFormat, std::string("model file is malformed: ") + e.what());
  }
}

void write_model(const std::string& path, const Model& model) { write_file_atomic(path, encode_model(model)); }
Model read_model(const std::string& path) { return decode_model(read_file(path)); }

std::string encode_sketch(const sketch::Sketch& sk) {
  require(sk.values.size() == sk.spec.m, ErrorCode::kShape, "sketch length does not match its spec");
  Writer w;
  w.bytes("CLSK", 4);
  w.u32(kSketchVersion);
  w.u32(static_cast<std::uint32_t>(sk.spec.d));
  w.u32(static_cast<std::uint32_t>(sk.spec.m));
  w.u64(sk.n);
  w.f64(sk.spec.scale);
  w.u64(sk.spec.seed);
  w.u64(sk.spec.fingerprint());
  for (const auto& c : sk.values) {
    w.f64(c.real());
    w.f64(c.imag());
  }
  return w.take();
}

sketch::Sketch decode_sketch(const std::string& bytes) {
  Reader r(bytes, "sketch");
  r.magic("CLSK");
  const std::uint32_t version = r.u32();
  require(version == kSketchVersion, ErrorCode::kVersion,
          "sketch format version " + std::to_string(version) + " is not supported (expected " +
              std::to_string(kSketchVersion) + ")");
  sketch::Sketch sk;
  sk.spec.d = r.u32();
  sk.spec.m = r.u32();
  sk.n = r.u64();
  sk.spec.scale = r.f64();
  sk.spec.seed = r.u64();
  try {
    sk.spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kFormat, std::string("sketch header is invalid: ") + e.what());
  }
  require(sk.n >= 1, ErrorCode::kFormat, "sketch header reports zero samples");
  const std::uint64_t stored = r.u64();
  require(stored == sk.spec.fingerprint(), ErrorCode::kFingerprint,
          "sketch header fingerprint does not match its frequency parameters (m, d, scale, seed)");
  r.need(16 * sk.spec.m);
  sk.values.resize(sk.spec.m);
  for (auto& c : sk.values) {
    const double re = r.f64();
    const double im = r.f64();
    c = {re, im};
  }
  r.finish();
  return sk;
}

void write_sketch(const std::string& path, const sketch::Sketch& sk) { write_file_atomic(path, encode_sketch(sk)); }
sketch::Sketch read_sketch(const std::string& path) { return decode_sketch(read_file(path)); }

std::string normalizer_to_json(const AffineNormalizer& n) {
  nlohmann::json j;
  j["mins"] = n.mins();
  j["maxs"] = n.maxs();
  return j.dump(2) + "\n";
}

AffineNormalizer normalizer_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return AffineNormalizer(j.at("mins").get<std::vector<double>>(), j.at("maxs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormat, std::string("normalizer file is malformed: ") + e.what());
  }
}

void write_normalizer(const std::string& path, const AffineNormalizer& n) {
  write_file_atomic(path, normalizer_to_json(n));
}

AffineNormalizer read_normalizer(const std::string& path) { return normalizer_from_json(read_file(path)); }

}  // namespace clsk::data

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

#include "denoise/patches.hpp"

#include <limits>

#include "error.hpp"

namespace clsk::denoise {

using Index = Eigen::Index;

Aggregation parse_aggregation(const std::string& name) {
  if (name == "average") return Aggregation::kAverage;
  if (name == "center") return Aggregation::kCenter;
  fail(ErrorCode::kConfig, "unknown aggregation '" + name + "' (expected average or center)");
}

void PatchConfig::validate() const {
  require(side >= 1, ErrorCode::kConfig, "patch side must be at least 1");
  require(stride >= 1 && stride <= side, ErrorCode::kConfig, "stride must lie in [1, side]");
}

std::vector<std::size_t> window_offsets(std::size_t length, std::size_t side, std::size_t stride) {
  require(length >= side, ErrorCode::kShape, "image is smaller than the patch");
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o + side <= length; o += stride) out.push_back(o);
  if (out.back() + side < length) out.push_back(length - side);
  return out;
}

PatchSet extract_patches(const GrayImage& img, const PatchConfig& cfg) {
  cfg.validate();
  require(img.pixels.size() == img.width * img.height, ErrorCode::kShape, "image buffer size mismatch");
  require(img.width >= cfg.side && img.height >= cfg.side, ErrorCode::kShape,
          "image " + std::to_string(img.width) + "x" + std::to_string(img.height) + " is smaller than a " +
              std::to_string(cfg.side) + "x" + std::to_string(cfg.side) + " patch");
  const auto xs = window_offsets(img.width, cfg.side, cfg.stride);
  const auto ys = window_offsets(img.height, cfg.side, cfg.stride);
  PatchSet set;
  const std::size_t d = cfg.side * cfg.side;
  set.patches.resize(static_cast<Index>(d), static_cast<Index>(xs.size() * ys.size()));
  set.positions.reserve(xs.size() * ys.size());
  Index col = 0;
  for (std::size_t y : ys) {
    for (std::size_t x : xs) {
      for (std::size_t r = 0; r < cfg.side; ++r) {
        for (std::size_t c = 0; c < cfg.side; ++c) {
          set.patches(static_cast<Index>(r * cfg.side + c), col) = img.at(x + c, y + r);
        }
      }
      set.positions.push_back({x, y});
      ++col;
    }
  }
  return set;
}

GrayImage reassemble(const PatchSet& set, std::size_t width, std::size_t height, std::size_t side,
                     Aggregation aggregation) {
  require(static_cast<std::size_t>(set.patches.rows()) == side * side, ErrorCode::kShape,
          "patch length does not match side^2");
  require(static_cast<std::size_t>(set.patches.cols()) == set.positions.size(), ErrorCode::kShape,
          "patch and position counts differ");
  GrayImage out(width, height);
  std::vector<std::size_t> count(width * height, 0);
  std::vector<double> best(width * height, std::numeric_limits<double>::infinity());
  const double half = 0.5 * static_cast<double>(side - 1);

  for (std::size_t k = 0; k < set.positions.size(); ++k) {
    const PatchPosition pos = set.positions[k];
    require(pos.x + side <= width && pos.y + side <= height, ErrorCode::kShape, "patch position out of bounds");
    const double cx = static_cast<double>(pos.x) + half;
    const double cy = static_cast<double>(pos.y) + half;
    for (std::size_t r = 0; r < side; ++r) {
      for (std::size_t c = 0; c < side; ++c) {
        const std::size_t x = pos.x + c;
        const std::size_t y = pos.y + r;
        const std::size_t i = y * width + x;
        const double v = set.patches(static_cast<Index>(r * side + c), static_cast<Index>(k));
        ++count[i];
        if (aggregation == Aggregation::kAverage) {
          out.pixels[i] += (v - out.pixels[i]) / static_cast<double>(count[i]);
        } else {
          const double dx = static_cast<double>(x) - cx;
          const double dy = static_cast<double>(y) - cy;
          const double dist = dx * dx + dy * dy;
          if (dist < best[i]) {
            best[i] = dist;
            out.pixels[i] = v;
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < count.size(); ++i) {
    if (count[i] == 0) {
      fail(ErrorCode::kShape, "pixel (" + std::to_string(i % width) + ", " + std::to_string(i / width) +
                                  ") is not covered by any patch");
    }
  }
  out.clamp();
  return out;
}

GrayImage denoise_image(const nn::ReluNet& net, const GrayImage& img, const DenoiseConfig& dcfg,
                        const PatchConfig& pcfg, const data::AffineNormalizer* normalizer) {
  require(net.input_dim() == pcfg.side * pcfg.side, ErrorCode::kShape,
          "model input dimension " + std::to_string(net.input_dim()) + " does not match " +
              std::to_string(pcfg.side) + "x" + std::to_string(pcfg.side) + " patches");
  PatchSet set = extract_patches(img, pcfg);
  // lambda = 0 is the identity; skip the normalizer round trip so it stays bit-exact.
  if (dcfg.lambda == 0.0) normalizer = nullptr;
  if (normalizer != nullptr) normalizer->apply_inplace(set.patches);
  set.patches = denoise_batch(net, set.patches, dcfg);
  if (normalizer != nullptr) normalizer->invert_inplace(set.patches);
  return reassemble(set, img.width, img.height, pcfg.side, pcfg.aggregation);
}

}  // namespace clsk::denoise

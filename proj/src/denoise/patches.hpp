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

#ifndef CLSKETCH_DENOISE_PATCHES_HPP_
#define CLSKETCH_DENOISE_PATCHES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "data/normalizer.hpp"
#include "denoise/image.hpp"
#include "denoise/variational.hpp"
#include "nn/relu_net.hpp"

namespace clsk::denoise {

enum class Aggregation { kAverage, kCenter };

Aggregation parse_aggregation(const std::string& name);

struct PatchConfig {
  std::size_t side = 3;
  std::size_t stride = 3;
  Aggregation aggregation = Aggregation::kAverage;

  void validate() const;
};

struct PatchPosition {
  std::size_t x = 0;  // column of the top-left pixel
  std::size_t y = 0;  // row of the top-left pixel
};

struct PatchSet {
  nn::Matrix patches;  // side^2 x N, each patch flattened row-major
  std::vector<PatchPosition> positions;
};

/// Window offsets along one axis: 0, stride, 2 stride, ..., plus a final
/// window clamped to the border when the stride does not land on it.
std::vector<std::size_t> window_offsets(std::size_t length, std::size_t side, std::size_t stride);

/// Sliding windows in row-major order of their positions.
PatchSet extract_patches(const GrayImage& img, const PatchConfig& cfg);

/// average: mean of all covering patch values. center: value from the
/// covering patch whose centre is nearest, ties to the earliest patch.
/// Output is clamped to [0, 1]. Throws if any pixel is left uncovered.
GrayImage reassemble(const PatchSet& set, std::size_t width, std::size_t height, std::size_t side,
                     Aggregation aggregation);

/// extract -> normalize -> denoise each patch -> unnormalize -> reassemble.
/// `normalizer` may be null, in which case intensities are used as they are.
GrayImage denoise_image(const nn::ReluNet& net, const GrayImage& img, const DenoiseConfig& dcfg,
                        const PatchConfig& pcfg, const data::AffineNormalizer* normalizer);

}  // namespace clsk::denoise

#endif  // CLSKETCH_DENOISE_PATCHES_HPP_

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

#ifndef CLSKETCH_DENOISE_IMAGE_HPP_
#define CLSKETCH_DENOISE_IMAGE_HPP_

#include <algorithm>
#include <cstddef>
#include <vector>

namespace clsk::denoise {

/// Grayscale image, row-major, nominal intensities in [0, 1]. Noisy images
/// may hold values outside that range until they are clamped.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), pixels(w * h, fill) {}

  double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

  void clamp() {
    for (double& p : pixels) p = std::clamp(p, 0.0, 1.0);
  }
};

}  // namespace clsk::denoise

#endif  // CLSKETCH_DENOISE_IMAGE_HPP_

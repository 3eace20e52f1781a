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

#ifndef CLSKETCH_DATA_GENERATORS_HPP_
#define CLSKETCH_DATA_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "denoise/image.hpp"

namespace clsk::data {

/// Planar spiral: t ~ U(0, length), r = r_min + (r_max - r_min) t / length,
/// x = (r cos t, r sin t) plus optional N(0, jitter^2) per coordinate.
struct SpiralSpec {
  std::size_t n = 1000;
  double r_min = 0.3;
  double r_max = 1.0;
  double length = 6.283185307179586;
  double jitter = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Point on the spiral curve at parameter t, without jitter.
Eigen::Vector2d spiral_point(const SpiralSpec& spec, double t);

/// 2 x n.
Eigen::MatrixXd generate_spiral(const SpiralSpec& spec);

/// Copy with i.i.d. N(0, sigma^2) added to every entry. Nothing is clamped.
Eigen::MatrixXd add_gaussian_noise(const Eigen::MatrixXd& x, double sigma, std::uint64_t seed);
std::vector<double> add_gaussian_noise(std::span<const double> x, double sigma, std::uint64_t seed);

/// Piecewise-smooth test image: a shaded background overlaid with random
/// ellipses, rectangles and half-plane wedges of constant or shaded tone.
denoise::GrayImage synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed,
                                   std::size_t shapes = 40);

/// `count` random side x side patches (side^2 x count, row-major flattening).
/// With `augment`, each patch also gets a random one of the eight
/// rotations/reflections of the square.
Eigen::MatrixXd sample_patches(const denoise::GrayImage& img, std::size_t count, std::size_t side,
                               std::uint64_t seed, bool augment);

}  // namespace clsk::data

#endif  // CLSKETCH_DATA_GENERATORS_HPP_

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

#include "data/generators.hpp"

#include <cmath>
#include <random>

#include "error.hpp"

namespace clsk::data {

void SpiralSpec::validate() const {
  require(n >= 1, ErrorCode::kConfig, "spiral sample count must be at least 1");
  require(std::isfinite(r_min) && std::isfinite(r_max) && r_min < r_max, ErrorCode::kConfig,
          "spiral radii must satisfy r_min < r_max");
  require(std::isfinite(length) && length > 0.0, ErrorCode::kConfig, "spiral length must be positive");
  require(std::isfinite(jitter) && jitter >= 0.0, ErrorCode::kConfig, "jitter must be non-negative");
}

Eigen::Vector2d spiral_point(const SpiralSpec& spec, double t) {
  const double r = spec.r_min + (spec.r_max - spec.r_min) * t / spec.length;
  return {r * std::cos(t), r * std::sin(t)};
}

Eigen::MatrixXd generate_spiral(const SpiralSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> ut(0.0, spec.length);
  std::normal_distribution<double> jit(0.0, 1.0);
  Eigen::MatrixXd out(2, static_cast<Eigen::Index>(spec.n));
  for (Eigen::Index i = 0; i < out.cols(); ++i) {
    out.col(i) = spiral_point(spec, ut(rng));
    if (spec.jitter > 0.0) {
      out(0, i) += spec.jitter * jit(rng);
      out(1, i) += spec.jitter * jit(rng);
    }
  }
  return out;
}

std::vector<double> add_gaussian_noise(std::span<const double> x, double sigma, std::uint64_t seed) {
  require(std::isfinite(sigma) && sigma >= 0.0, ErrorCode::kConfig, "noise level must be non-negative");
  std::vector<double> out(x.begin(), x.end());
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double& v : out) v += sigma * g(rng);
  return out;
}

Eigen::MatrixXd add_gaussian_noise(const Eigen::MatrixXd& x, double sigma, std::uint64_t seed) {
  const std::vector<double> flat =
      add_gaussian_noise(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), sigma, seed);
  return Eigen::Map<const Eigen::MatrixXd>(flat.data(), x.rows(), x.cols());
}

denoise::GrayImage synthetic_image(std::size_t width, std::size_t height, std::uint64_t seed,
                                   std::size_t shapes) {
  require(width >= 1 && height >= 1, ErrorCode::kConfig, "image must have positive size");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);

  denoise::GrayImage img(width, height);
  {
    const double base = 0.3 + 0.4 * u01(rng);
    const double gx = (u01(rng) - 0.5) * 0.4;
    const double gy = (u01(rng) - 0.5) * 0.4;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        img.at(x, y) = base + gx * (static_cast<double>(x) / w - 0.5) + gy * (static_cast<double>(y) / h - 0.5);
      }
    }
  }

  for (std::size_t s = 0; s < shapes; ++s) {
    const int kind = static_cast<int>(u01(rng) * 3.0);
    const double cx = u01(rng) * w;
    const double cy = u01(rng) * h;
    const double rx = (0.03 + 0.22 * u01(rng)) * w;
    const double ry = (0.03 + 0.22 * u01(rng)) * h;
    const double angle = u01(rng) * 3.141592653589793;
    const double tone = 0.05 + 0.9 * u01(rng);
    const double shade = u01(rng) < 0.5 ? 0.0 : (u01(rng) - 0.5) * 0.3;
    const double ca = std::cos(angle);
    const double sa = std::sin(angle);
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        const double dx = static_cast<double>(x) + 0.5 - cx;
        const double dy = static_cast<double>(y) + 0.5 - cy;
        const double a = (ca * dx + sa * dy) / rx;
        const double b = (-sa * dx + ca * dy) / ry;
        bool inside = false;
        switch (kind) {
          case 0:
            inside = a * a + b * b <= 1.0;
            break;
          case 1:
            inside = std::abs(a) <= 1.0 && std::abs(b) <= 1.0;
            break;
          default:
            inside = a >= 0.0 && std::abs(b) <= a && a <= 1.5;
            break;
        }
        if (inside) img.at(x, y) = tone + shade * a;
      }
    }
  }
  img.clamp();
  return img;
}

Eigen::MatrixXd sample_patches(const denoise::GrayImage& img, std::size_t count, std::size_t side,
                               std::uint64_t seed, bool augment) {
  require(side >= 1 && img.width >= side && img.height >= side, ErrorCode::kShape,
          "image is smaller than the patch");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> ux(0, img.width - side);
  std::uniform_int_distribution<std::size_t> uy(0, img.height - side);
  std::uniform_int_distribution<int> ut(0, 7);
  const auto s = static_cast<std::ptrdiff_t>(side);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(side * side), static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < out.cols(); ++k) {
    const std::size_t x0 = ux(rng);
    const std::size_t y0 = uy(rng);
    const int t = augment ? ut(rng) : 0;
    for (std::ptrdiff_t r = 0; r < s; ++r) {
      for (std::ptrdiff_t c = 0; c < s; ++c) {
        // Dihedral transform of the (r, c) index: optional transpose, then flips.
        std::ptrdiff_t rr = (t & 4) ? c : r;
        std::ptrdiff_t cc = (t & 4) ? r : c;
        if (t & 1) rr = s - 1 - rr;
        if (t & 2) cc = s - 1 - cc;
        out(static_cast<Eigen::Index>(r * s + c), k) =
            img.at(x0 + static_cast<std::size_t>(cc), y0 + static_cast<std::size_t>(rr));
      }
    }
  }
  return out;
}

}  // namespace clsk::data

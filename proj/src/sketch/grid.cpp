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

#include "sketch/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"

namespace clsk::sketch {

Grid sample_grid(std::size_t P, std::size_t d, std::uint64_t seed) {
  require(P >= 1, ErrorCode::kConfig, "grid needs at least one point");
  require(d >= 1, ErrorCode::kConfig, "grid dimension must be positive");
  Grid grid;
  grid.seed = seed;
  grid.points.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(P));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double* p = grid.points.data();
  for (std::size_t k = 0; k < P * d; ++k) p[k] = uni(rng);
  return grid;
}

Grid regular_grid(std::size_t P, std::size_t d) {
  require(P >= 1, ErrorCode::kConfig, "grid needs at least one point");
  require(d >= 1, ErrorCode::kConfig, "grid dimension must be positive");
  const auto per_axis = static_cast<std::size_t>(
      std::max(1.0, std::round(std::pow(static_cast<double>(P), 1.0 / static_cast<double>(d)))));
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= per_axis;
  Grid grid;
  grid.points.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t idx = rest % per_axis;
      rest /= per_axis;
      grid.points(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          (static_cast<double>(idx) + 0.5) / static_cast<double>(per_axis);
    }
  }
  return grid;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace clsk::sketch

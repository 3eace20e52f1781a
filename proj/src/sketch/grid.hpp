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

#ifndef CLSKETCH_SKETCH_GRID_HPP_
#define CLSKETCH_SKETCH_GRID_HPP_

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

namespace clsk::sketch {

/// P points in the unit hypercube, stored d x P (one column per point).
struct Grid {
  Eigen::MatrixXd points;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(points.cols()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points.rows()); }
};

/// P i.i.d. uniform points on [0,1]^d.
Grid sample_grid(std::size_t P, std::size_t d, std::uint64_t seed);

/// Cell-centred lattice with g = round(P^(1/d)) points per axis (g^d points).
Grid regular_grid(std::size_t P, std::size_t d);

/// Mixes a base seed with a stream index (splitmix64). Used to derive the
/// per-iteration grid seeds of the training loop.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace clsk::sketch

#endif  // CLSKETCH_SKETCH_GRID_HPP_

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

#ifndef CLSKETCH_DATA_NORMALIZER_HPP_
#define CLSKETCH_DATA_NORMALIZER_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace clsk::data {

/// Per-coordinate affine map of the data box [min, max] onto
/// [margin, 1 - margin] inside the unit cube.
class AffineNormalizer {
 public:
  static constexpr double kMargin = 0.01;

  AffineNormalizer() = default;
  /// Throws kDegenerate naming the first coordinate with max <= min.
  AffineNormalizer(std::vector<double> mins, std::vector<double> maxs);

  /// Fits the box of a d x n point set.
  static AffineNormalizer fit(const Eigen::MatrixXd& points);

  std::size_t dim() const noexcept { return mins_.size(); }
  const std::vector<double>& mins() const noexcept { return mins_; }
  const std::vector<double>& maxs() const noexcept { return maxs_; }

  double apply(std::size_t j, double x) const;
  double invert(std::size_t j, double y) const;

  /// Both operate column-wise on a d x n matrix.
  void apply_inplace(Eigen::MatrixXd& points) const;
  void invert_inplace(Eigen::MatrixXd& points) const;

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

}  // namespace clsk::data

#endif  // CLSKETCH_DATA_NORMALIZER_HPP_

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

#include "data/normalizer.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace clsk::data {

namespace {
constexpr double kSpan = 1.0 - 2.0 * AffineNormalizer::kMargin;
}

AffineNormalizer::AffineNormalizer(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  require(!mins_.empty() && mins_.size() == maxs_.size(), ErrorCode::kShape,
          "normalizer needs matching, non-empty min and max vectors");
  for (std::size_t j = 0; j < mins_.size(); ++j) {
    require(std::isfinite(mins_[j]) && std::isfinite(maxs_[j]), ErrorCode::kFormat,
            "normalizer bounds of coordinate " + std::to_string(j) + " are not finite");
    require(maxs_[j] > mins_[j], ErrorCode::kDegenerate,
            "coordinate " + std::to_string(j) + " is constant over the data (max = min); cannot normalize");
  }
}

AffineNormalizer AffineNormalizer::fit(const Eigen::MatrixXd& points) {
  require(points.cols() >= 1 && points.rows() >= 1, ErrorCode::kShape, "cannot fit a normalizer to no data");
  require(points.allFinite(), ErrorCode::kFormat, "data contains non-finite values");
  const Eigen::VectorXd lo = points.rowwise().minCoeff();
  const Eigen::VectorXd hi = points.rowwise().maxCoeff();
  return AffineNormalizer(std::vector<double>(lo.data(), lo.data() + lo.size()),
                          std::vector<double>(hi.data(), hi.data() + hi.size()));
}

double AffineNormalizer::apply(std::size_t j, double x) const {
  return kMargin + kSpan * (x - mins_[j]) / (maxs_[j] - mins_[j]);
}

double AffineNormalizer::invert(std::size_t j, double y) const {
  return mins_[j] + (y - kMargin) / kSpan * (maxs_[j] - mins_[j]);
}

void AffineNormalizer::apply_inplace(Eigen::MatrixXd& points) const {
  require(static_cast<std::size_t>(points.rows()) == dim(), ErrorCode::kShape,
          "data dimension does not match the normalizer");
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (std::size_t j = 0; j < dim(); ++j) {
      auto& v = points(static_cast<Eigen::Index>(j), c);
      v = apply(j, v);
    }
  }
}

void AffineNormalizer::invert_inplace(Eigen::MatrixXd& points) const {
  require(static_cast<std::size_t>(points.rows()) == dim(), ErrorCode::kShape,
          "data dimension does not match the normalizer");
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (std::size_t j = 0; j < dim(); ++j) {
      auto& v = points(static_cast<Eigen::Index>(j), c);
      v = invert(j, v);
    }
  }
}

}  // namespace clsk::data

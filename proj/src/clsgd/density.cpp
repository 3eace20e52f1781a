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

#include "clsgd/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "sketch/discretized_operator.hpp"
#include "sketch/oracle.hpp"

namespace clsk::clsgd {

namespace {

class ReluEvaluation final : public DensityEvaluation {
 public:
  ReluEvaluation(nn::ReluNet net, const Eigen::MatrixXd& points)
      : net_(std::move(net)), trace_(nn::forward_batch(net_, points)) {
    const Eigen::Index P = points.cols();
    values_.resize(static_cast<std::size_t>(P));
    for (Eigen::Index i = 0; i < P; ++i) {
      values_[static_cast<std::size_t>(i)] = std::exp(-trace_.output.col(i).squaredNorm());
    }
  }

  // d mu / d f = -2 mu f, so the network cotangent of point i is -2 w_i mu_i f_i.
  std::vector<double> param_gradient(std::span<const double> weights) const override {
    require(weights.size() == values_.size(), ErrorCode::kShape, "one weight per grid point required");
    nn::Matrix cot = trace_.output;
    for (Eigen::Index i = 0; i < cot.cols(); ++i) {
      const auto u = static_cast<std::size_t>(i);
      cot.col(i) *= -2.0 * weights[u] * values_[u];
    }
    std::vector<double> grad(net_.param_count(), 0.0);
    nn::backward(net_, trace_, cot, grad, nullptr);
    return grad;
  }

 private:
  nn::ReluNet net_;
  nn::ForwardTrace trace_;
};

class CosineEvaluation final : public DensityEvaluation {
 public:
  CosineEvaluation(const std::vector<int>& wave, double theta, const Eigen::MatrixXd& points) {
    const Eigen::Index P = points.cols();
    basis_.resize(static_cast<std::size_t>(P));
    values_.resize(static_cast<std::size_t>(P));
    for (Eigen::Index i = 0; i < P; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < wave.size(); ++j) {
        dot += static_cast<double>(wave[j]) * points(static_cast<Eigen::Index>(j), i);
      }
      const auto u = static_cast<std::size_t>(i);
      basis_[u] = std::cos(2.0 * std::numbers::pi * dot);
      values_[u] = 1.0 + theta * basis_[u];
    }
  }

  std::vector<double> param_gradient(std::span<const double> weights) const override {
    require(weights.size() == values_.size(), ErrorCode::kShape, "one weight per grid point required");
    double g = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) g += weights[i] * basis_[i];
    return {g};
  }

 private:
  std::vector<double> basis_;
};

}  // namespace

ReluDensity::ReluDensity(std::vector<std::size_t> layer_dims)
    : dims_(std::move(layer_dims)), count_(0) {
  nn::validate_dims(dims_);
  count_ = nn::ReluNet::param_count(dims_);
}

std::unique_ptr<DensityEvaluation> ReluDensity::evaluate(std::span<const double> params,
                                                         const Eigen::MatrixXd& points) const {
  require(static_cast<std::size_t>(points.rows()) == dim(), ErrorCode::kShape,
          "grid dimension does not match the network input");
  nn::ReluNet net(dims_, std::vector<double>(params.begin(), params.end()));
  return std::make_unique<ReluEvaluation>(std::move(net), points);
}

CosineParamDensity::CosineParamDensity(std::vector<int> wave) : wave_(std::move(wave)) {
  require(!wave_.empty() && std::any_of(wave_.begin(), wave_.end(), [](int v) { return v != 0; }),
          ErrorCode::kConfig, "wave vector must be non-empty and not all zero");
}

std::unique_ptr<DensityEvaluation> CosineParamDensity::evaluate(std::span<const double> params,
                                                                const Eigen::MatrixXd& points) const {
  require(params.size() == 1, ErrorCode::kShape, "cosine density has exactly one parameter");
  require(static_cast<std::size_t>(points.rows()) == dim(), ErrorCode::kShape,
          "grid dimension does not match the wave vector");
  require(std::abs(params[0]) <= 1.0, ErrorCode::kConfig,
          "cosine density parameter must satisfy |theta| <= 1 to stay non-negative");
  return std::make_unique<CosineEvaluation>(wave_, params[0], points);
}

sketch::ComplexVector CosineParamDensity::sketch(const sketch::FrequencySet& freqs, double theta) const {
  return sketch::cosine_sketch(freqs, wave_, theta);
}

sketch::ComplexVector CosineParamDensity::sketch_derivative(const sketch::FrequencySet& freqs) const {
  return sketch::cosine_harmonic_sketch(freqs, wave_);
}

double CosineParamDensity::exact_gradient(const sketch::FrequencySet& freqs, double theta,
                                          std::span<const sketch::Complex> z) const {
  const sketch::ComplexVector s_dmu = sketch_derivative(freqs);
  sketch::ComplexVector resid = sketch(freqs, theta);
  require(resid.size() == z.size(), ErrorCode::kShape, "sketch length mismatch");
  for (std::size_t l = 0; l < resid.size(); ++l) resid[l] -= z[l];
  return 2.0 * sketch::inner(s_dmu, resid).real();
}

}  // namespace clsk::clsgd

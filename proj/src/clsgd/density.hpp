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

#ifndef CLSKETCH_CLSGD_DENSITY_HPP_
#define CLSKETCH_CLSGD_DENSITY_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nn/relu_net.hpp"
#include "sketch/frequencies.hpp"

namespace clsk::clsgd {

/// Density values on a point set plus whatever is needed to differentiate
/// sum_i w_i mu_theta(p_i) with respect to theta afterwards.
class DensityEvaluation {
 public:
  virtual ~DensityEvaluation() = default;

  const std::vector<double>& values() const noexcept { return values_; }

  /// grad_theta sum_i weights[i] * mu_theta(p_i)
  virtual std::vector<double> param_gradient(std::span<const double> weights) const = 0;

 protected:
  std::vector<double> values_;
};

/// Unnormalized parametric density mu_theta on [0,1]^d.
class ParametricDensity {
 public:
  virtual ~ParametricDensity() = default;

  virtual std::size_t dim() const = 0;
  virtual std::size_t param_count() const = 0;

  /// `points` is d x P.
  virtual std::unique_ptr<DensityEvaluation> evaluate(std::span<const double> params,
                                                      const Eigen::MatrixXd& points) const = 0;
};

/// mu_theta(x) = exp(-||f_theta(x)||^2) for a ReLU network f_theta.
class ReluDensity final : public ParametricDensity {
 public:
  explicit ReluDensity(std::vector<std::size_t> layer_dims);

  std::size_t dim() const override { return dims_.front(); }
  std::size_t param_count() const override { return count_; }
  const std::vector<std::size_t>& layer_dims() const noexcept { return dims_; }

  std::unique_ptr<DensityEvaluation> evaluate(std::span<const double> params,
                                              const Eigen::MatrixXd& points) const override;

 private:
  std::vector<std::size_t> dims_;
  std::size_t count_;
};

/// mu_theta(x) = 1 + theta_1 cos(2 pi <k, x>), a single-parameter density
/// with closed-form sketch and sketch derivative. Used to check the
/// statistics of the stochastic directions against exact gradients.
class CosineParamDensity final : public ParametricDensity {
 public:
  explicit CosineParamDensity(std::vector<int> wave);

  std::size_t dim() const override { return wave_.size(); }
  std::size_t param_count() const override { return 1; }
  const std::vector<int>& wave() const noexcept { return wave_; }

  std::unique_ptr<DensityEvaluation> evaluate(std::span<const double> params,
                                              const Eigen::MatrixXd& points) const override;

  /// S mu_theta
  sketch::ComplexVector sketch(const sketch::FrequencySet& freqs, double theta) const;
  /// S (d mu_theta / d theta)
  sketch::ComplexVector sketch_derivative(const sketch::FrequencySet& freqs) const;
  /// <d mu / d theta, mu>_{L2} over the unit cube
  double l2_derivative_inner(double theta) const { return 0.5 * theta; }

  /// grad G(theta) = 2 Re <S dmu, S mu - z>
  double exact_gradient(const sketch::FrequencySet& freqs, double theta,
                        std::span<const sketch::Complex> z) const;

 private:
  std::vector<int> wave_;
};

}  // namespace clsk::clsgd

#endif  // CLSKETCH_CLSGD_DENSITY_HPP_

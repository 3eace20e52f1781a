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

#ifndef CLSKETCH_NN_RELU_NET_HPP_
#define CLSKETCH_NN_RELU_NET_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace clsk::nn {

/// Column-major batch of vectors: one column per sample.
using Matrix = Eigen::MatrixXd;

/// Fully connected ReLU network f(x) with a flat parameter vector.
///
/// Layer k maps dims[k] -> dims[k+1]. Hidden layers apply relu(t) = max(t, 0);
/// the last layer is affine. Parameters are stored layer by layer as the
/// row-major weight matrix (dims[k+1] x dims[k]) followed by the bias.
class ReluNet {
 public:
  ReluNet(std::vector<std::size_t> dims, std::vector<double> params);

  static std::size_t param_count(std::span<const std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t input_dim() const noexcept { return dims_.front(); }
  std::size_t output_dim() const noexcept { return dims_.back(); }
  std::size_t num_layers() const noexcept { return dims_.size() - 1; }
  std::size_t param_count() const noexcept { return params_.size(); }

  std::span<const double> params() const noexcept { return params_; }
  std::span<double> mutable_params() noexcept { return params_; }

  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + dims_[layer] * dims_[layer + 1];
  }

  using WeightMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using BiasMap = Eigen::Map<const Eigen::VectorXd>;
  WeightMap weights(std::size_t layer) const;
  BiasMap bias(std::size_t layer) const;

 private:
  std::vector<std::size_t> dims_;
  // 64-byte aligned so vectorized kernels see the same layout on every run
  std::vector<double, Eigen::aligned_allocator<double>> params_;
  std::vector<std::size_t> offsets_;
};

/// Validates a layer list: at least two entries, none zero.
void validate_dims(std::span<const std::size_t> dims);

/// Weights uniform on +-sqrt(6 / (fan_in + fan_out)), zero biases.
ReluNet init_network(std::span<const std::size_t> dims, std::uint64_t seed);

std::vector<double> forward(const ReluNet& net, std::span<const double> x);

/// Activations retained by forward_batch for the reverse pass.
struct ForwardTrace {
  // activations[0] is the input batch; activations[k] is the post-ReLU output
  // of hidden layer k. The final affine output is kept separately.
  std::vector<Matrix> activations;
  Matrix output;
};

ForwardTrace forward_batch(const ReluNet& net, const Matrix& inputs);

/// Gradients of sum_i <f(x_i), c_i> from a recorded forward pass. Either
/// output may be null. `param_grad` must hold param_count() entries.
void backward(const ReluNet& net, const ForwardTrace& trace, const Matrix& cotangents,
              std::span<double> param_grad, Matrix* input_grad);

/// Sum over points of J_theta(f(p_i))^T c_i. `points` is d x P and
/// `cotangents` is out x P.
std::vector<double> param_gradient_batch(const ReluNet& net, const Matrix& points,
                                         const Matrix& cotangents);

/// J_x(f(x))^T c for a single input.
std::vector<double> input_gradient(const ReluNet& net, std::span<const double> x,
                                   std::span<const double> cotangent);

}  // namespace clsk::nn

#endif  // CLSKETCH_NN_RELU_NET_HPP_

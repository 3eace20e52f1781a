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

#include "nn/relu_net.hpp"

#include <cmath>
#include <random>
#include <string>

#include "error.hpp"

namespace clsk::nn {

void validate_dims(std::span<const std::size_t> dims) {
  require(dims.size() >= 2, ErrorCode::kConfig, "network needs at least two layer sizes");
  for (std::size_t k = 0; k < dims.size(); ++k) {
    require(dims[k] >= 1, ErrorCode::kConfig,
            "layer size " + std::to_string(k) + " is zero");
  }
}

std::size_t ReluNet::param_count(std::span<const std::size_t> dims) {
  std::size_t total = 0;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) total += dims[k] * dims[k + 1] + dims[k + 1];
  return total;
}

ReluNet::ReluNet(std::vector<std::size_t> dims, std::vector<double> params)
    : dims_(std::move(dims)), params_(params.begin(), params.end()) {
  validate_dims(dims_);
  const std::size_t expected = param_count(dims_);
  require(params_.size() == expected, ErrorCode::kShape,
          "parameter vector has " + std::to_string(params_.size()) + " entries, layout needs " +
              std::to_string(expected));
  offsets_.reserve(dims_.size() - 1);
  std::size_t off = 0;
  for (std::size_t k = 0; k + 1 < dims_.size(); ++k) {
    offsets_.push_back(off);
    off += dims_[k] * dims_[k + 1] + dims_[k + 1];
  }
}

ReluNet::WeightMap ReluNet::weights(std::size_t layer) const {
  return WeightMap(params_.data() + weight_offset(layer),
                   static_cast<Eigen::Index>(dims_[layer + 1]),
                   static_cast<Eigen::Index>(dims_[layer]));
}

ReluNet::BiasMap ReluNet::bias(std::size_t layer) const {
  return BiasMap(params_.data() + bias_offset(layer), static_cast<Eigen::Index>(dims_[layer + 1]));
}

ReluNet init_network(std::span<const std::size_t> dims, std::uint64_t seed) {
  validate_dims(dims);
  std::vector<double> params;
  params.reserve(ReluNet::param_count(dims));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const double bound = std::sqrt(6.0 / static_cast<double>(dims[k] + dims[k + 1]));
    std::uniform_real_distribution<double> uni(-bound, bound);
    for (std::size_t i = 0; i < dims[k] * dims[k + 1]; ++i) params.push_back(uni(rng));
    params.insert(params.end(), dims[k + 1], 0.0);
  }
  return ReluNet(std::vector<std::size_t>(dims.begin(), dims.end()), std::move(params));
}

std::vector<double> forward(const ReluNet& net, std::span<const double> x) {
  require(x.size() == net.input_dim(), ErrorCode::kShape,
          "input has " + std::to_string(x.size()) + " coordinates, network expects " +
              std::to_string(net.input_dim()));
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const std::size_t layers = net.num_layers();
  for (std::size_t k = 0; k < layers; ++k) {
    Eigen::VectorXd z = net.weights(k) * a + net.bias(k);
    if (k + 1 < layers) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return std::vector<double>(a.data(), a.data() + a.size());
}

ForwardTrace forward_batch(const ReluNet& net, const Matrix& inputs) {
  require(static_cast<std::size_t>(inputs.rows()) == net.input_dim(), ErrorCode::kShape,
          "batch rows do not match the network input dimension");
  ForwardTrace trace;
  const std::size_t layers = net.num_layers();
  trace.activations.reserve(layers);
  trace.activations.push_back(inputs);
  for (std::size_t k = 0; k < layers; ++k) {
    Matrix z = net.weights(k) * trace.activations.back();
    z.colwise() += net.bias(k);
    if (k + 1 < layers) {
      trace.activations.push_back(z.cwiseMax(0.0));
    } else {
      trace.output = std::move(z);
    }
  }
  return trace;
}

void backward(const ReluNet& net, const ForwardTrace& trace, const Matrix& cotangents,
              std::span<double> param_grad, Matrix* input_grad) {
  require(static_cast<std::size_t>(cotangents.rows()) == net.output_dim() &&
              cotangents.cols() == trace.output.cols(),
          ErrorCode::kShape, "cotangent batch does not match the network output");
  require(cotangents.allFinite(), ErrorCode::kConfig, "cotangents must be finite");
  if (!param_grad.empty()) {
    require(param_grad.size() == net.param_count(), ErrorCode::kShape,
            "gradient buffer does not match the parameter count");
  }
  using RowMajorMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

  Matrix delta = cotangents;
  for (std::size_t k = net.num_layers(); k-- > 0;) {
    const Matrix& a_prev = trace.activations[k];
    if (!param_grad.empty()) {
      RowMajorMap gw(param_grad.data() + net.weight_offset(k),
                     static_cast<Eigen::Index>(net.dims()[k + 1]),
                     static_cast<Eigen::Index>(net.dims()[k]));
      // Reduce into owned (aligned) storage first: Eigen's kernels peel
      // differently for unaligned destinations, which changes rounding.
      const Matrix w_grad = delta * a_prev.transpose();
      const Eigen::VectorXd b_grad = delta.rowwise().sum();
      gw = w_grad;
      Eigen::Map<Eigen::VectorXd>(param_grad.data() + net.bias_offset(k),
                                  static_cast<Eigen::Index>(net.dims()[k + 1])) = b_grad;
    }
    if (k == 0) {
      if (input_grad != nullptr) input_grad->noalias() = net.weights(0).transpose() * delta;
      break;
    }
    Matrix back = net.weights(k).transpose() * delta;
    // Subgradient of relu at 0 is 0: a_prev is exactly 0 there.
    delta = (a_prev.array() > 0.0).select(back.array(), 0.0).matrix();
  }
}

std::vector<double> param_gradient_batch(const ReluNet& net, const Matrix& points,
                                         const Matrix& cotangents) {
  require(points.cols() == cotangents.cols(), ErrorCode::kShape,
          "points and cotangents differ in count");
  std::vector<double> grad(net.param_count(), 0.0);
  if (points.cols() == 0) return grad;
  const ForwardTrace trace = forward_batch(net, points);
  backward(net, trace, cotangents, grad, nullptr);
  return grad;
}

std::vector<double> input_gradient(const ReluNet& net, std::span<const double> x,
                                   std::span<const double> cotangent) {
  require(x.size() == net.input_dim(), ErrorCode::kShape, "input dimension mismatch");
  require(cotangent.size() == net.output_dim(), ErrorCode::kShape, "cotangent dimension mismatch");
  const Matrix in = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const Matrix cot =
      Eigen::Map<const Eigen::VectorXd>(cotangent.data(), static_cast<Eigen::Index>(cotangent.size()));
  const ForwardTrace trace = forward_batch(net, in);
  Matrix g(static_cast<Eigen::Index>(x.size()), 1);
  backward(net, trace, cot, {}, &g);
  return std::vector<double>(g.data(), g.data() + g.size());
}

}  // namespace clsk::nn

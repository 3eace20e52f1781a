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

// MAP denoising with the learned regularizer:
//   G(u) = ||u - v||^2 + lambda ||f(u)||^2,
// minimized by gradient descent from u = v.

#ifndef CLSKETCH_DENOISE_VARIATIONAL_HPP_
#define CLSKETCH_DENOISE_VARIATIONAL_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "nn/relu_net.hpp"

namespace clsk::denoise {

struct DenoiseConfig {
  double lambda = 0.0;
  std::uint64_t steps = 200;
  double step_size = 0.1;
  double tolerance = 1e-10;  // stop once ||u_{t+1} - u_t|| <= tolerance
  bool backtracking = true;  // halve the step (persistently) when G increases

  void validate() const;
};

double objective(const nn::ReluNet& net, std::span<const double> u, std::span<const double> v, double lambda);

/// 2 (u - v) + 2 lambda J_u(f(u))^T f(u)
std::vector<double> objective_gradient(const nn::ReluNet& net, std::span<const double> u,
                                       std::span<const double> v, double lambda);

std::vector<double> denoise_vector(const nn::ReluNet& net, std::span<const double> v, const DenoiseConfig& cfg);

/// Denoises every column of a d x N batch independently. Each column keeps
/// its own step size and stopping state.
nn::Matrix denoise_batch(const nn::ReluNet& net, const nn::Matrix& v, const DenoiseConfig& cfg);

}  // namespace clsk::denoise

#endif  // CLSKETCH_DENOISE_VARIATIONAL_HPP_

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

// Sketch-matching objectives on randomly discretized sketching operators.
//
// Notation: B_p is the operator discretized on grid p (see
// sketch::DiscretizedOperator), mu_theta(p) the density values on the grid,
// z the empirical sketch and alpha a scalar normalization of mu_theta.

#ifndef CLSKETCH_CLSGD_OBJECTIVE_HPP_
#define CLSKETCH_CLSGD_OBJECTIVE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "clsgd/density.hpp"
#include "sketch/discretized_operator.hpp"
#include "sketch/frequencies.hpp"
#include "sketch/grid.hpp"

namespace clsk::clsgd {

/// alpha = |<B mu, z>| / ||B mu||^2. Throws kDegenerate when ||B mu||^2 is
/// below 1e-300.
double alpha_least_squares(std::span<const sketch::Complex> b_mu, std::span<const sketch::Complex> z);

struct NaiveResult {
  double loss = 0.0;  // ||alpha B_p mu(p) - z||^2
  double alpha = 0.0;
  std::vector<double> gradient;
};

/// Loss and gradient of H1(theta) = ||alpha B_p mu_theta(p) - z||^2, with alpha
/// held constant. When `alpha` is empty it is first fitted by
/// alpha_least_squares on the same grid.
NaiveResult naive_loss_and_gradient(const ParametricDensity& density, std::span<const double> params,
                                    const sketch::FrequencySet& freqs, const sketch::Grid& p,
                                    std::span<const sketch::Complex> z, std::optional<double> alpha,
                                    std::size_t dense_budget_bytes = sketch::kDefaultDenseBudgetBytes);

struct UnbiasedOptions {
  bool allow_shared_seed = false;  // warn instead of failing when p and q share a seed
  std::size_t dense_budget_bytes = sketch::kDefaultDenseBudgetBytes;
};

/// Two-grid descent direction
///   D = 2 grad_theta Re<alpha B_p mu_theta(p), l_q>,  l_q = alpha B_q mu_theta(q) - z,
/// with l_q held fixed. For alpha = 1 its expectation over independent grids
/// is exactly grad ||S mu_theta - z||^2.
std::vector<double> unbiased_direction(const ParametricDensity& density, std::span<const double> params,
                                       const sketch::FrequencySet& freqs, const sketch::Grid& p,
                                       const sketch::Grid& q, double alpha, std::span<const sketch::Complex> z,
                                       const UnbiasedOptions& options = {});

/// ||alpha B_eval mu_theta(eval) - z||^2 on a fixed evaluation grid.
double monitor_loss(const ParametricDensity& density, std::span<const double> params,
                    const sketch::FrequencySet& freqs, const sketch::Grid& eval_grid,
                    std::span<const sketch::Complex> z, double alpha,
                    std::size_t dense_budget_bytes = sketch::kDefaultDenseBudgetBytes);

}  // namespace clsk::clsgd

#endif  // CLSKETCH_CLSGD_OBJECTIVE_HPP_

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

#include "clsgd/objective.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "error.hpp"

namespace clsk::clsgd {

namespace {

void check_sketch(const sketch::FrequencySet& freqs, std::span<const sketch::Complex> z) {
  require(z.size() == freqs.m(), ErrorCode::kShape,
          "sketch has " + std::to_string(z.size()) + " components, frequency set has " +
              std::to_string(freqs.m()));
}

sketch::ComplexVector residual(const sketch::ComplexVector& b_mu, double alpha,
                               std::span<const sketch::Complex> z) {
  sketch::ComplexVector r(b_mu.size());
  for (std::size_t l = 0; l < r.size(); ++l) r[l] = alpha * b_mu[l] - z[l];
  return r;
}

}  // namespace

double alpha_least_squares(std::span<const sketch::Complex> b_mu, std::span<const sketch::Complex> z) {
  const double denom = sketch::squared_norm(b_mu);
  require(denom >= 1e-300, ErrorCode::kDegenerate,
          "discretized density sketch vanishes; cannot fit the normalization");
  return std::abs(sketch::inner(b_mu, z)) / denom;
}

NaiveResult naive_loss_and_gradient(const ParametricDensity& density, std::span<const double> params,
                                    const sketch::FrequencySet& freqs, const sketch::Grid& p,
                                    std::span<const sketch::Complex> z, std::optional<double> alpha,
                                    std::size_t dense_budget_bytes) {
  check_sketch(freqs, z);
  const sketch::DiscretizedOperator op(freqs, p.points, dense_budget_bytes);
  const auto eval = density.evaluate(params, p.points);
  const sketch::ComplexVector b_mu = op.apply(eval->values());

  NaiveResult out;
  out.alpha = alpha.has_value() ? *alpha : alpha_least_squares(b_mu, z);
  const sketch::ComplexVector r = residual(b_mu, out.alpha, z);
  out.loss = sketch::squared_norm(r);
  if (out.alpha == 0.0) {
    out.gradient.assign(density.param_count(), 0.0);
    return out;
  }
  // d H1 / d mu_i = 2 alpha backproject(r)_i
  std::vector<double> w = op.backproject(r);
  for (double& v : w) v *= 2.0 * out.alpha;
  out.gradient = eval->param_gradient(w);
  return out;
}

std::vector<double> unbiased_direction(const ParametricDensity& density, std::span<const double> params,
                                       const sketch::FrequencySet& freqs, const sketch::Grid& p,
                                       const sketch::Grid& q, double alpha, std::span<const sketch::Complex> z,
                                       const UnbiasedOptions& options) {
  check_sketch(freqs, z);
  if (p.seed == q.seed) {
    if (!options.allow_shared_seed) {
      fail(ErrorCode::kIndependence, "grids p and q share seed " + std::to_string(p.seed) +
                                         "; the two-grid direction needs independent grids");
    }
    std::cerr << "warning: grids p and q share seed " << p.seed << "; direction may be biased\n";
  }
  // l_q is a constant: evaluated without keeping anything for the reverse pass.
  sketch::ComplexVector l_q;
  {
    const sketch::DiscretizedOperator op_q(freqs, q.points, options.dense_budget_bytes);
    const auto eval_q = density.evaluate(params, q.points);
    l_q = residual(op_q.apply(eval_q->values()), alpha, z);
  }
  const sketch::DiscretizedOperator op_p(freqs, p.points, options.dense_budget_bytes);
  const auto eval_p = density.evaluate(params, p.points);
  std::vector<double> w = op_p.backproject(l_q);
  for (double& v : w) v *= 2.0 * alpha;
  return eval_p->param_gradient(w);
}

double monitor_loss(const ParametricDensity& density, std::span<const double> params,
                    const sketch::FrequencySet& freqs, const sketch::Grid& eval_grid,
                    std::span<const sketch::Complex> z, double alpha, std::size_t dense_budget_bytes) {
  check_sketch(freqs, z);
  const sketch::DiscretizedOperator op(freqs, eval_grid.points, dense_budget_bytes);
  const auto eval = density.evaluate(params, eval_grid.points);
  return sketch::squared_norm(residual(op.apply(eval->values()), alpha, z));
}

}  // namespace clsk::clsgd

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

#include "clsgd/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "clsgd/objective.hpp"
#include "error.hpp"
#include "sketch/grid.hpp"

namespace clsk::clsgd {

namespace {

// Separate seed streams so q0 and the per-iteration grids never collide.
constexpr std::uint64_t kFirstQStream = 0xfffffffffffffff1ULL;

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kNaive:
      return "naive";
    case Algorithm::kUnbiased:
      return "unbiased";
    case Algorithm::kFixedGrid:
      return "fixed-grid";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "naive") return Algorithm::kNaive;
  if (name == "unbiased") return Algorithm::kUnbiased;
  if (name == "fixed-grid" || name == "fixed_grid") return Algorithm::kFixedGrid;
  fail(ErrorCode::kConfig, "unknown algorithm '" + name + "' (expected naive, unbiased or fixed-grid)");
}

void TrainConfig::validate() const {
  require(grid_points >= 1, ErrorCode::kConfig, "grid size P must be at least 1");
  if (alpha.has_value()) {
    require(std::isfinite(*alpha) && *alpha > 0.0, ErrorCode::kConfig, "fixed alpha must be positive");
  }
  step.validate();
}

std::size_t TrainConfig::effective_eval_points() const {
  return eval_points == 0 ? 4 * grid_points : eval_points;
}

std::uint64_t TrainConfig::effective_checkpoint_interval() const {
  if (checkpoint_interval != 0) return checkpoint_interval;
  return std::max<std::uint64_t>(1, iterations / 100);
}

TrainHistory train(const ParametricDensity& density, std::vector<double>& params, const TrainConfig& config,
                   const sketch::Sketch& z, const sketch::FrequencySet& freqs, const TrainProgress& progress,
                   const TrainSnapshot& snapshot) {
  config.validate();
  require(z.spec.fingerprint() == freqs.fingerprint(), ErrorCode::kFingerprint,
          "sketch was built with a different frequency set");
  require(freqs.d() == density.dim(), ErrorCode::kShape,
          "sketch dimension " + std::to_string(freqs.d()) + " does not match model input dimension " +
              std::to_string(density.dim()));
  require(params.size() == density.param_count(), ErrorCode::kShape, "parameter vector has the wrong length");

  const std::size_t d = density.dim();
  const sketch::Grid eval_grid = sketch::sample_grid(config.effective_eval_points(), d, config.eval_seed);
  const std::uint64_t interval = config.effective_checkpoint_interval();
  const auto t0 = std::chrono::steady_clock::now();

  TrainHistory history;
  auto record = [&](std::uint64_t k, double step) {
    TrainRecord rec;
    rec.iter = k;
    rec.step = step;
    if (config.alpha.has_value()) {
      rec.alpha = *config.alpha;
    } else {
      const sketch::DiscretizedOperator op(freqs, eval_grid.points, config.dense_budget_bytes);
      const auto eval = density.evaluate(params, eval_grid.points);
      rec.alpha = alpha_least_squares(op.apply(eval->values()), z.values);
    }
    rec.loss = monitor_loss(density, params, freqs, eval_grid, z.values, rec.alpha, config.dense_budget_bytes);
    require(std::isfinite(rec.loss), ErrorCode::kDivergence,
            "monitored loss is not finite at iteration " + std::to_string(k));
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    history.records.push_back(rec);
    if (progress) progress(rec);
    if (snapshot) snapshot(rec, params);
  };

  record(0, 0.0);
  if (config.iterations == 0) return history;

  Stepper stepper(config.step, params.size());
  const UnbiasedOptions unbiased_opts{config.allow_shared_seed, config.dense_budget_bytes};
  sketch::Grid fixed;
  sketch::Grid q;
  if (config.algorithm == Algorithm::kFixedGrid) {
    fixed = sketch::regular_grid(config.grid_points, d);
  } else if (config.algorithm == Algorithm::kUnbiased) {
    q = sketch::sample_grid(config.grid_points, d, sketch::derive_seed(config.grid_seed, kFirstQStream));
  }

  for (std::uint64_t k = 1; k <= config.iterations; ++k) {
    std::vector<double> direction;
    switch (config.algorithm) {
      case Algorithm::kNaive: {
        const sketch::Grid p = sketch::sample_grid(config.grid_points, d, sketch::derive_seed(config.grid_seed, k));
        NaiveResult r = naive_loss_and_gradient(density, params, freqs, p, z.values, config.alpha,
                                                config.dense_budget_bytes);
        require(std::isfinite(r.loss), ErrorCode::kDivergence,
                "training loss is not finite at iteration " + std::to_string(k));
        direction = std::move(r.gradient);
        break;
      }
      case Algorithm::kFixedGrid: {
        NaiveResult r = naive_loss_and_gradient(density, params, freqs, fixed, z.values, config.alpha,
                                                config.dense_budget_bytes);
        require(std::isfinite(r.loss), ErrorCode::kDivergence,
                "training loss is not finite at iteration " + std::to_string(k));
        direction = std::move(r.gradient);
        break;
      }
      case Algorithm::kUnbiased: {
        sketch::Grid p = sketch::sample_grid(config.grid_points, d, sketch::derive_seed(config.grid_seed, k));
        double alpha = 0.0;
        if (config.alpha.has_value()) {
          alpha = *config.alpha;
        } else {
          const sketch::DiscretizedOperator op(freqs, q.points, config.dense_budget_bytes);
          const auto eval = density.evaluate(params, q.points);
          alpha = alpha_least_squares(op.apply(eval->values()), z.values);
        }
        direction = unbiased_direction(density, params, freqs, p, q, alpha, z.values, unbiased_opts);
        q = std::move(p);
        break;
      }
    }
    require(all_finite(direction), ErrorCode::kDivergence,
            "descent direction is not finite at iteration " + std::to_string(k));
    const double tau = stepper.step(params, direction, k);
    require(all_finite(params), ErrorCode::kDivergence,
            "parameters are not finite after iteration " + std::to_string(k));
    if (k % interval == 0 || k == config.iterations) record(k, tau);
  }
  return history;
}

}  // namespace clsk::clsgd

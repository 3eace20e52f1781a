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

#ifndef CLSKETCH_CLSGD_TRAIN_HPP_
#define CLSKETCH_CLSGD_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clsgd/density.hpp"
#include "clsgd/schedule.hpp"
#include "sketch/discretized_operator.hpp"
#include "sketch/sketch_state.hpp"

namespace clsk::clsgd {

enum class Algorithm { kNaive, kUnbiased, kFixedGrid };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct TrainConfig {
  Algorithm algorithm = Algorithm::kNaive;
  std::uint64_t iterations = 1000;
  std::size_t grid_points = 1000;
  std::optional<double> alpha;  // empty: least-squares fit per iteration
  StepRule step;
  std::uint64_t grid_seed = 1;
  std::size_t eval_points = 0;          // 0: 4 * grid_points
  std::uint64_t eval_seed = 0x5eed;
  std::uint64_t checkpoint_interval = 0;  // 0: max(1, iterations / 100)
  bool allow_shared_seed = false;
  std::size_t dense_budget_bytes = sketch::kDefaultDenseBudgetBytes;

  void validate() const;
  std::size_t effective_eval_points() const;
  std::uint64_t effective_checkpoint_interval() const;
};

struct TrainRecord {
  std::uint64_t iter = 0;
  double loss = 0.0;   // monitored loss on the evaluation grid
  double alpha = 0.0;  // alpha used for the monitored loss
  double step = 0.0;   // step size of iteration `iter` (0 at iteration 0)
  double seconds = 0.0;
};

struct TrainHistory {
  std::vector<TrainRecord> records;
};

using TrainProgress = std::function<void(const TrainRecord&)>;
/// Called next to `progress` at every checkpoint with the current parameters.
using TrainSnapshot = std::function<void(const TrainRecord&, std::span<const double> params)>;

/// Runs CL-SGD in place on `params`. Records the monitored loss at
/// iteration 0, every checkpoint interval and at the last iteration. Throws
/// kDivergence if the loss or the parameters stop being finite.
TrainHistory train(const ParametricDensity& density, std::vector<double>& params, const TrainConfig& config,
                   const sketch::Sketch& z, const sketch::FrequencySet& freqs,
                   const TrainProgress& progress = {}, const TrainSnapshot& snapshot = {});

}  // namespace clsk::clsgd

#endif  // CLSKETCH_CLSGD_TRAIN_HPP_

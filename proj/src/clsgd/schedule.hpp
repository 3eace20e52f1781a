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

#ifndef CLSKETCH_CLSGD_SCHEDULE_HPP_
#define CLSKETCH_CLSGD_SCHEDULE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace clsk::clsgd {

enum class StepKind { kConstant, kDiminishing, kAdam };

/// constant: tau_k = rate. diminishing: tau_k = rate / k, which satisfies
/// sum tau_k = inf and sum tau_k^2 < inf. adam: rate is the Adam learning
/// rate (no convergence guarantee is claimed for it).
struct StepRule {
  StepKind kind = StepKind::kConstant;
  double rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// tau_k for k >= 1. For Adam this is the base learning rate.
double step_schedule(const StepRule& rule, std::uint64_t k);

/// Applies theta <- theta - tau_k * direction (plain rules) or the Adam
/// update built from the raw directions.
class Stepper {
 public:
  Stepper(const StepRule& rule, std::size_t param_count);

  /// Returns the step size used. `k` starts at 1.
  double step(std::span<double> params, std::span<const double> direction, std::uint64_t k);

 private:
  StepRule rule_;
  std::vector<double> m1_;
  std::vector<double> m2_;
};

}  // namespace clsk::clsgd

#endif  // CLSKETCH_CLSGD_SCHEDULE_HPP_

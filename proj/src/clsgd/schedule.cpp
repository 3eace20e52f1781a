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

#include "clsgd/schedule.hpp"

#include <cmath>

#include "error.hpp"

namespace clsk::clsgd {

void StepRule::validate() const {
  require(std::isfinite(rate) && rate > 0.0, ErrorCode::kConfig, "step rate must be positive");
  if (kind == StepKind::kAdam) {
    require(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0, ErrorCode::kConfig,
            "Adam betas must lie in [0, 1)");
    require(epsilon > 0.0, ErrorCode::kConfig, "Adam epsilon must be positive");
  }
}

double step_schedule(const StepRule& rule, std::uint64_t k) {
  require(k >= 1, ErrorCode::kConfig, "step index starts at 1");
  switch (rule.kind) {
    case StepKind::kDiminishing:
      return rule.rate / static_cast<double>(k);
    case StepKind::kConstant:
    case StepKind::kAdam:
      break;
  }
  return rule.rate;
}

Stepper::Stepper(const StepRule& rule, std::size_t param_count) : rule_(rule) {
  rule_.validate();
  if (rule_.kind == StepKind::kAdam) {
    m1_.assign(param_count, 0.0);
    m2_.assign(param_count, 0.0);
  }
}

double Stepper::step(std::span<double> params, std::span<const double> direction, std::uint64_t k) {
  require(params.size() == direction.size(), ErrorCode::kShape, "direction does not match parameters");
  const double tau = step_schedule(rule_, k);
  if (rule_.kind != StepKind::kAdam) {
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= tau * direction[i];
    return tau;
  }
  require(m1_.size() == params.size(), ErrorCode::kShape, "Adam state does not match parameters");
  const double kd = static_cast<double>(k);
  const double c1 = 1.0 - std::pow(rule_.beta1, kd);
  const double c2 = 1.0 - std::pow(rule_.beta2, kd);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = direction[i];
    m1_[i] = rule_.beta1 * m1_[i] + (1.0 - rule_.beta1) * g;
    m2_[i] = rule_.beta2 * m2_[i] + (1.0 - rule_.beta2) * g * g;
    params[i] -= tau * (m1_[i] / c1) / (std::sqrt(m2_[i] / c2) + rule_.epsilon);
  }
  return tau;
}

}  // namespace clsk::clsgd

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

#ifndef CLSKETCH_SKETCH_DISCRETIZED_OPERATOR_HPP_
#define CLSKETCH_SKETCH_DISCRETIZED_OPERATOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "sketch/frequencies.hpp"
#include "sketch/grid.hpp"

namespace clsk::sketch {

inline constexpr std::size_t kDefaultDenseBudgetBytes = std::size_t{64} << 20;

/// The sketching operator discretized on a point set,
///   B[l, i] = exp(-j <omega_l, p_i>) / P.
///
/// Applied matrix-free by default. When the cos/sin tables fit in
/// `dense_budget_bytes` they are materialized once and reused by apply() and
/// backproject(). Holds references: `freqs` and `points` must outlive it.
class DiscretizedOperator {
 public:
  DiscretizedOperator(const FrequencySet& freqs, const Eigen::MatrixXd& points,
                      std::size_t dense_budget_bytes = kDefaultDenseBudgetBytes);

  /// (B v)_l = (1/P) sum_i exp(-j <omega_l, p_i>) v_i
  ComplexVector apply(std::span<const double> values) const;

  /// w_i = (1/P) sum_l Re(exp(+j <omega_l, p_i>) r_l), the real adjoint of
  /// apply(): Re<B v, r> = <v, backproject(r)>.
  std::vector<double> backproject(std::span<const Complex> r) const;

  bool is_dense() const noexcept { return cos_.size() > 0; }
  std::size_t m() const noexcept { return freqs_.m(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.cols()); }

 private:
  const FrequencySet& freqs_;
  const Eigen::MatrixXd& points_;
  Eigen::MatrixXd cos_;  // m x P
  Eigen::MatrixXd sin_;
};

ComplexVector apply_discretized_operator(const FrequencySet& freqs, const Grid& grid,
                                         std::span<const double> values);

std::vector<double> backproject(const FrequencySet& freqs, const Grid& grid, std::span<const Complex> r);

/// <a, b> = sum_l a_l conj(b_l)
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double squared_norm(std::span<const Complex> a);

}  // namespace clsk::sketch

#endif  // CLSKETCH_SKETCH_DISCRETIZED_OPERATOR_HPP_

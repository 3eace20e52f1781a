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

// Densities on [0,1]^d whose sketches have closed forms. They stand in for
// the network density when checking the statistics of the random
// discretization against exact values.

#ifndef CLSKETCH_SKETCH_ORACLE_HPP_
#define CLSKETCH_SKETCH_ORACLE_HPP_

#include <span>
#include <vector>

#include "sketch/frequencies.hpp"

namespace clsk::sketch {

/// mu(x) = 1 + a cos(2 pi <k, x>) with integer k != 0 and 0 < a < 1.
struct OracleCosineDensity {
  std::vector<int> k;
  double amplitude = 0.5;

  void validate() const;
  double operator()(std::span<const double> x) const;
};

/// F(omega) = prod_j (1 - exp(-j omega_j)) / (j omega_j), the sketch of the
/// uniform density on the unit cube (limit 1 per coordinate at omega_j = 0).
Complex uniform_cube_transform(std::span<const double> omega);

/// Closed-form S mu for mu = 1 + a cos(2 pi <k, x>). No range check on `a`.
ComplexVector cosine_sketch(const FrequencySet& freqs, std::span<const int> k, double a);

/// Sketch of the harmonic part cos(2 pi <k, x>) alone, i.e. d(S mu)/da.
ComplexVector cosine_harmonic_sketch(const FrequencySet& freqs, std::span<const int> k);

ComplexVector oracle_sketch_cosine(const FrequencySet& freqs, const OracleCosineDensity& density);

/// Integral over the unit cube of mu1 * mu2.
double l2_inner(const OracleCosineDensity& mu1, const OracleCosineDensity& mu2);

}  // namespace clsk::sketch

#endif  // CLSKETCH_SKETCH_ORACLE_HPP_

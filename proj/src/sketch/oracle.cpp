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

#include "sketch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace clsk::sketch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (1 - e^{-jw}) / (jw) = e^{-jw/2} sinc(w/2), which stays accurate near 0.
Complex axis_transform(double w) {
  const double h = 0.5 * w;
  const double sinc = (std::abs(h) < 1e-8) ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return Complex(std::cos(h) * sinc, -std::sin(h) * sinc);
}

}  // namespace

void OracleCosineDensity::validate() const {
  require(!k.empty(), ErrorCode::kConfig, "wave vector is empty");
  require(std::any_of(k.begin(), k.end(), [](int v) { return v != 0; }), ErrorCode::kConfig,
          "wave vector must not be all zero");
  require(amplitude > 0.0 && amplitude < 1.0, ErrorCode::kConfig, "amplitude must lie in (0, 1)");
}

double OracleCosineDensity::operator()(std::span<const double> x) const {
  require(x.size() == k.size(), ErrorCode::kShape, "point dimension does not match wave vector");
  double dot = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) dot += static_cast<double>(k[j]) * x[j];
  return 1.0 + amplitude * std::cos(kTwoPi * dot);
}

Complex uniform_cube_transform(std::span<const double> omega) {
  Complex f(1.0, 0.0);
  for (double w : omega) f *= axis_transform(w);
  return f;
}

ComplexVector cosine_sketch(const FrequencySet& freqs, std::span<const int> k, double a) {
  require(k.size() == freqs.d(), ErrorCode::kShape, "wave vector does not match frequency dimension");
  const std::size_t d = freqs.d();
  ComplexVector out(freqs.m());
  std::vector<double> w(d), minus(d), plus(d);
  for (std::size_t l = 0; l < freqs.m(); ++l) {
    for (std::size_t j = 0; j < d; ++j) {
      w[j] = freqs.table()(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
      minus[j] = w[j] - kTwoPi * k[j];
      plus[j] = w[j] + kTwoPi * k[j];
    }
    out[l] = uniform_cube_transform(w) +
             0.5 * a * (uniform_cube_transform(minus) + uniform_cube_transform(plus));
  }
  return out;
}

ComplexVector cosine_harmonic_sketch(const FrequencySet& freqs, std::span<const int> k) {
  require(k.size() == freqs.d(), ErrorCode::kShape, "wave vector does not match frequency dimension");
  const std::size_t d = freqs.d();
  ComplexVector out(freqs.m());
  std::vector<double> minus(d), plus(d);
  for (std::size_t l = 0; l < freqs.m(); ++l) {
    for (std::size_t j = 0; j < d; ++j) {
      const double w = freqs.table()(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
      minus[j] = w - kTwoPi * k[j];
      plus[j] = w + kTwoPi * k[j];
    }
    out[l] = 0.5 * (uniform_cube_transform(minus) + uniform_cube_transform(plus));
  }
  return out;
}

ComplexVector oracle_sketch_cosine(const FrequencySet& freqs, const OracleCosineDensity& density) {
  density.validate();
  return cosine_sketch(freqs, density.k, density.amplitude);
}

double l2_inner(const OracleCosineDensity& mu1, const OracleCosineDensity& mu2) {
  mu1.validate();
  mu2.validate();
  require(mu1.k.size() == mu2.k.size(), ErrorCode::kShape, "densities live in different dimensions");
  // Cross terms integrate to zero unless the wave vectors coincide up to sign.
  bool same = true;
  bool opposite = true;
  for (std::size_t j = 0; j < mu1.k.size(); ++j) {
    same = same && mu1.k[j] == mu2.k[j];
    opposite = opposite && mu1.k[j] == -mu2.k[j];
  }
  return 1.0 + ((same || opposite) ? 0.5 * mu1.amplitude * mu2.amplitude : 0.0);
}

}  // namespace clsk::sketch

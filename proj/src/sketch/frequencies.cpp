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

#include "sketch/frequencies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "error.hpp"
#include "sketch/fast_trig.hpp"

namespace clsk::sketch {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t word) {
  for (int b = 0; b < 8; ++b) {
    h ^= (word >> (8 * b)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t FrequencySpec::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, static_cast<std::uint64_t>(m));
  h = fnv1a(h, static_cast<std::uint64_t>(d));
  h = fnv1a(h, std::bit_cast<std::uint64_t>(scale));
  h = fnv1a(h, seed);
  return h;
}

void FrequencySpec::validate() const {
  require(m >= 1, ErrorCode::kConfig, "sketch size m must be positive");
  require(d >= 1, ErrorCode::kConfig, "dimension d must be positive");
  require(std::isfinite(scale) && scale > 0.0, ErrorCode::kConfig,
          "frequency scale must be positive and finite");
}

FrequencySet::FrequencySet(const FrequencySpec& spec)
    : spec_(spec), fingerprint_(spec.fingerprint()) {
  spec_.validate();
  table_.resize(static_cast<Eigen::Index>(spec_.m), static_cast<Eigen::Index>(spec_.d));
  std::mt19937_64 rng(spec_.seed);
  std::normal_distribution<double> normal(0.0, spec_.scale);
  for (Eigen::Index l = 0; l < table_.rows(); ++l) {
    for (Eigen::Index j = 0; j < table_.cols(); ++j) table_(l, j) = normal(rng);
  }
}

FrequencySet sample_frequencies(std::size_t m, std::size_t d, double scale, std::uint64_t seed) {
  return FrequencySet(FrequencySpec{m, d, scale, seed});
}

double default_frequency_scale(const Eigen::MatrixXd& points, std::uint64_t seed, std::size_t pairs) {
  require(points.cols() >= 2, ErrorCode::kConfig, "scale heuristic needs at least two points");
  require(pairs >= 1, ErrorCode::kConfig, "scale heuristic needs at least one pair");
  const auto n = static_cast<std::size_t>(points.cols());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> proj;
  proj.reserve(pairs);
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (b == a) b = (a + 1) % n;
    double dot = 0.0;
    for (Eigen::Index j = 0; j < points.rows(); ++j) {
      dot += normal(rng) * (points(j, static_cast<Eigen::Index>(a)) - points(j, static_cast<Eigen::Index>(b)));
    }
    proj.push_back(std::abs(dot));
  }
  const auto mid = proj.begin() + static_cast<std::ptrdiff_t>(proj.size() / 2);
  std::nth_element(proj.begin(), mid, proj.end());
  require(*mid > 0.0, ErrorCode::kDegenerate, "data pairs are identical; cannot pick a frequency scale");
  return (std::numbers::pi / 2.0) / *mid;
}

void compute_phases(const FrequencySet& freqs, const double* x, double* phase) {
  const auto m = static_cast<Eigen::Index>(freqs.m());
  const Eigen::MatrixXd& omega = freqs.table();
  Eigen::Map<Eigen::VectorXd> out(phase, m);
  out = omega.col(0) * x[0];
  for (Eigen::Index j = 1; j < omega.cols(); ++j) out += omega.col(j) * x[j];
}

void phases_to_unit(const double* phase, double* s, double* c, std::size_t m) {
  const Eigen::Map<const Eigen::ArrayXd> ph(phase, static_cast<Eigen::Index>(m));
  if (!(ph.abs() < detail::kMaxPhase).all()) {
    fail(ErrorCode::kConfig, "phase outside the supported range (non-finite or |phase| >= " +
                                 std::to_string(detail::kMaxPhase) + "); check data normalization");
  }
  detail::sincos_array(phase, s, c, m);
}

}  // namespace clsk::sketch

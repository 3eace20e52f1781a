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

#ifndef CLSKETCH_SKETCH_FREQUENCIES_HPP_
#define CLSKETCH_SKETCH_FREQUENCIES_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace clsk::sketch {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Everything needed to regenerate a frequency table bit-for-bit.
struct FrequencySpec {
  std::size_t m = 0;
  std::size_t d = 0;
  double scale = 1.0;
  std::uint64_t seed = 0;

  /// FNV-1a hash of (m, d, scale bits, seed); embedded in sketch files.
  std::uint64_t fingerprint() const;
  void validate() const;

  friend bool operator==(const FrequencySpec&, const FrequencySpec&) = default;
};

/// m random frequencies omega_l in R^d, drawn i.i.d. N(0, scale^2 I).
class FrequencySet {
 public:
  explicit FrequencySet(const FrequencySpec& spec);

  const FrequencySpec& spec() const noexcept { return spec_; }
  std::size_t m() const noexcept { return spec_.m; }
  std::size_t d() const noexcept { return spec_.d; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// m x d, row l is omega_l. Column-major, so each coordinate is contiguous
  /// across frequencies.
  const Eigen::MatrixXd& table() const noexcept { return table_; }
  Eigen::VectorXd frequency(std::size_t l) const { return table_.row(static_cast<Eigen::Index>(l)).transpose(); }

 private:
  FrequencySpec spec_;
  std::uint64_t fingerprint_;
  Eigen::MatrixXd table_;
};

FrequencySet sample_frequencies(std::size_t m, std::size_t d, double scale, std::uint64_t seed);

/// Scale heuristic: picks sigma so that the median of |<omega, x - x'>| over
/// random data pairs is about pi/2. `points` is d x n.
double default_frequency_scale(const Eigen::MatrixXd& points, std::uint64_t seed,
                               std::size_t pairs = 1000);

/// Fills phase[l] = <omega_l, x> for l < m.
void compute_phases(const FrequencySet& freqs, const double* x, double* phase);

/// phase -> (cos, sin), vectorized. Rejects phases beyond the kernel range.
void phases_to_unit(const double* phase, double* s, double* c, std::size_t m);

}  // namespace clsk::sketch

#endif  // CLSKETCH_SKETCH_FREQUENCIES_HPP_

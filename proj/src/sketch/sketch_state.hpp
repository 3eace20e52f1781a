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

#ifndef CLSKETCH_SKETCH_SKETCH_STATE_HPP_
#define CLSKETCH_SKETCH_SKETCH_STATE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "sketch/frequencies.hpp"

namespace clsk::sketch {

/// A finalized empirical sketch z_l = (1/n) sum_i exp(-j <omega_l, x_i>),
/// together with the frequency spec it was computed with.
struct Sketch {
  FrequencySpec spec;
  std::uint64_t n = 0;
  ComplexVector values;

  /// Stored-data reduction n * d / m.
  double compression_factor() const {
    return static_cast<double>(n) * static_cast<double>(spec.d) / static_cast<double>(spec.m);
  }
};

/// One-pass mergeable accumulator. Single writer; shard the stream into
/// independent states and merge them for parallel sketching.
class SketchState {
 public:
  explicit SketchState(const FrequencySet& freqs);

  void update(const FrequencySet& freqs, std::span<const double> x);
  /// Adds every column of a d x n batch, in column order.
  void update_batch(const FrequencySet& freqs, const Eigen::MatrixXd& points);

  void merge(const SketchState& other);
  Sketch finalize() const;

  std::uint64_t count() const noexcept { return count_; }
  const FrequencySpec& spec() const noexcept { return spec_; }
  std::span<const double> accum_re() const noexcept { return re_; }
  std::span<const double> accum_im() const noexcept { return im_; }

 private:
  void check_freqs(const FrequencySet& freqs) const;

  FrequencySpec spec_;
  std::uint64_t fingerprint_;
  std::vector<double> re_;
  std::vector<double> im_;
  std::uint64_t count_ = 0;
  // scratch for the phase kernel
  std::vector<double> phase_, sin_, cos_;
};

SketchState merge_sketch_states(const SketchState& a, const SketchState& b);

/// Sketch of a whole point set (d x n). The data is cut into fixed-size
/// shards that are accumulated separately and merged in shard order, so the
/// result does not depend on `threads`.
Sketch sketch_points(const FrequencySet& freqs, const Eigen::MatrixXd& points, unsigned threads = 1);

/// Shards `points` as sketch_points does and merges the shards into `total`
/// in order. Feeding a stream in blocks whose sizes are multiples of
/// kSketchShardRows reproduces sketch_points on the whole stream exactly.
void accumulate_points(SketchState& total, const FrequencySet& freqs, const Eigen::MatrixXd& points,
                       unsigned threads = 1);

inline constexpr std::size_t kSketchShardRows = 1 << 16;

}  // namespace clsk::sketch

#endif  // CLSKETCH_SKETCH_SKETCH_STATE_HPP_

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

#include "sketch/sketch_state.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "error.hpp"

namespace clsk::sketch {

SketchState::SketchState(const FrequencySet& freqs)
    : spec_(freqs.spec()),
      fingerprint_(freqs.fingerprint()),
      re_(freqs.m(), 0.0),
      im_(freqs.m(), 0.0) {}

void SketchState::check_freqs(const FrequencySet& freqs) const {
  require(freqs.fingerprint() == fingerprint_, ErrorCode::kFingerprint,
          "frequency set does not match the one this sketch state was built with");
}

void SketchState::update(const FrequencySet& freqs, std::span<const double> x) {
  check_freqs(freqs);
  require(x.size() == spec_.d, ErrorCode::kShape,
          "sample has " + std::to_string(x.size()) + " coordinates, sketch expects " +
              std::to_string(spec_.d));
  const std::size_t m = spec_.m;
  phase_.resize(m);
  sin_.resize(m);
  cos_.resize(m);
  compute_phases(freqs, x.data(), phase_.data());
  phases_to_unit(phase_.data(), sin_.data(), cos_.data(), m);
  for (std::size_t l = 0; l < m; ++l) {
    re_[l] += cos_[l];
    im_[l] -= sin_[l];
  }
  ++count_;
}

void SketchState::update_batch(const FrequencySet& freqs, const Eigen::MatrixXd& points) {
  require(static_cast<std::size_t>(points.rows()) == spec_.d, ErrorCode::kShape,
          "batch rows do not match the sketch dimension");
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    update(freqs, std::span<const double>(points.col(i).data(), spec_.d));
  }
}

void SketchState::merge(const SketchState& other) {
  require(other.fingerprint_ == fingerprint_, ErrorCode::kFingerprint,
          "cannot merge sketch states built from different frequency sets");
  for (std::size_t l = 0; l < re_.size(); ++l) {
    re_[l] += other.re_[l];
    im_[l] += other.im_[l];
  }
  count_ += other.count_;
}

Sketch SketchState::finalize() const {
  require(count_ > 0, ErrorCode::kConfig, "cannot finalize an empty sketch");
  Sketch out;
  out.spec = spec_;
  out.n = count_;
  out.values.resize(re_.size());
  const double inv = 1.0 / static_cast<double>(count_);
  for (std::size_t l = 0; l < re_.size(); ++l) out.values[l] = Complex(re_[l] * inv, im_[l] * inv);
  return out;
}

SketchState merge_sketch_states(const SketchState& a, const SketchState& b) {
  SketchState out = a;
  out.merge(b);
  return out;
}

void accumulate_points(SketchState& total, const FrequencySet& freqs, const Eigen::MatrixXd& points,
                       unsigned threads) {
  const auto n = static_cast<std::size_t>(points.cols());
  if (n == 0) return;
  const std::size_t shards = (n + kSketchShardRows - 1) / kSketchShardRows;
  std::vector<SketchState> states(shards, SketchState(freqs));
  auto run_shard = [&](std::size_t s) {
    const std::size_t begin = s * kSketchShardRows;
    const std::size_t end = std::min(n, begin + kSketchShardRows);
    states[s].update_batch(freqs, points.middleCols(static_cast<Eigen::Index>(begin),
                                                    static_cast<Eigen::Index>(end - begin)));
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(shards)));
  if (workers == 1) {
    for (std::size_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t s = w; s < shards; s += workers) run_shard(s);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (const auto& s : states) total.merge(s);
}

Sketch sketch_points(const FrequencySet& freqs, const Eigen::MatrixXd& points, unsigned threads) {
  require(points.cols() > 0, ErrorCode::kConfig, "cannot sketch an empty point set");
  SketchState total(freqs);
  accumulate_points(total, freqs, points, threads);
  return total.finalize();
}

}  // namespace clsk::sketch

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

#include "sketch/discretized_operator.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace clsk::sketch {

namespace {

using Vec = Eigen::VectorXd;
using VecMap = Eigen::Map<Vec>;
using ConstVecMap = Eigen::Map<const Vec>;

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    require(std::isfinite(x), ErrorCode::kConfig, std::string(what) + " must be finite");
  }
}

}  // namespace

DiscretizedOperator::DiscretizedOperator(const FrequencySet& freqs, const Eigen::MatrixXd& points,
                                         std::size_t dense_budget_bytes)
    : freqs_(freqs), points_(points) {
  require(static_cast<std::size_t>(points.rows()) == freqs.d(), ErrorCode::kShape,
          "grid dimension " + std::to_string(points.rows()) + " does not match frequency dimension " +
              std::to_string(freqs.d()));
  require(points.cols() >= 1, ErrorCode::kConfig, "grid is empty");
  const std::size_t m = freqs.m();
  const std::size_t P = size();
  const double bytes = 2.0 * 8.0 * static_cast<double>(m) * static_cast<double>(P);
  if (bytes <= static_cast<double>(dense_budget_bytes)) {
    cos_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(P));
    sin_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(P));
    std::vector<double> phase(m);
    for (std::size_t i = 0; i < P; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      compute_phases(freqs_, points_.col(col).data(), phase.data());
      phases_to_unit(phase.data(), sin_.col(col).data(), cos_.col(col).data(), m);
    }
  }
}

ComplexVector DiscretizedOperator::apply(std::span<const double> values) const {
  const std::size_t m = freqs_.m();
  const std::size_t P = size();
  require(values.size() == P, ErrorCode::kShape,
          "value vector has " + std::to_string(values.size()) + " entries, grid has " + std::to_string(P));
  check_finite(values, "density values");
  Vec re(static_cast<Eigen::Index>(m));
  Vec im(static_cast<Eigen::Index>(m));
  const ConstVecMap v(values.data(), static_cast<Eigen::Index>(P));
  if (is_dense()) {
    re.noalias() = cos_ * v;
    im.noalias() = -(sin_ * v);
  } else {
    re.setZero();
    im.setZero();
    std::vector<double> phase(m), s(m), c(m);
    for (std::size_t i = 0; i < P; ++i) {
      if (values[i] == 0.0) continue;
      compute_phases(freqs_, points_.col(static_cast<Eigen::Index>(i)).data(), phase.data());
      phases_to_unit(phase.data(), s.data(), c.data(), m);
      re += values[i] * ConstVecMap(c.data(), static_cast<Eigen::Index>(m));
      im -= values[i] * ConstVecMap(s.data(), static_cast<Eigen::Index>(m));
    }
  }
  const double p = static_cast<double>(P);
  ComplexVector out(m);
  for (std::size_t l = 0; l < m; ++l) {
    out[l] = Complex(re[static_cast<Eigen::Index>(l)] / p, im[static_cast<Eigen::Index>(l)] / p);
  }
  return out;
}

std::vector<double> DiscretizedOperator::backproject(std::span<const Complex> r) const {
  const std::size_t m = freqs_.m();
  const std::size_t P = size();
  require(r.size() == m, ErrorCode::kShape,
          "residual has " + std::to_string(r.size()) + " components, sketch has " + std::to_string(m));
  Vec rr(static_cast<Eigen::Index>(m));
  Vec ri(static_cast<Eigen::Index>(m));
  for (std::size_t l = 0; l < m; ++l) {
    rr[static_cast<Eigen::Index>(l)] = r[l].real();
    ri[static_cast<Eigen::Index>(l)] = r[l].imag();
  }
  const double p = static_cast<double>(P);
  std::vector<double> w(P);
  VecMap out(w.data(), static_cast<Eigen::Index>(P));
  if (is_dense()) {
    out.noalias() = cos_.transpose() * rr;
    out.noalias() -= sin_.transpose() * ri;
    out /= p;
  } else {
    // Eigen-owned buffers keep the dot-product reduction order fixed.
    Vec phase(static_cast<Eigen::Index>(m)), s(static_cast<Eigen::Index>(m)), c(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < P; ++i) {
      compute_phases(freqs_, points_.col(static_cast<Eigen::Index>(i)).data(), phase.data());
      phases_to_unit(phase.data(), s.data(), c.data(), m);
      w[i] = (c.dot(rr) - s.dot(ri)) / p;
    }
  }
  return w;
}

ComplexVector apply_discretized_operator(const FrequencySet& freqs, const Grid& grid,
                                         std::span<const double> values) {
  return DiscretizedOperator(freqs, grid.points, 0).apply(values);
}

std::vector<double> backproject(const FrequencySet& freqs, const Grid& grid, std::span<const Complex> r) {
  return DiscretizedOperator(freqs, grid.points, 0).backproject(r);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), ErrorCode::kShape, "inner product of vectors of different lengths");
  Complex acc(0.0, 0.0);
  for (std::size_t l = 0; l < a.size(); ++l) acc += a[l] * std::conj(b[l]);
  return acc;
}

double squared_norm(std::span<const Complex> a) {
  double acc = 0.0;
  for (const Complex& v : a) acc += std::norm(v);
  return acc;
}

}  // namespace clsk::sketch

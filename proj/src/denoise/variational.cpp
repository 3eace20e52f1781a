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

#include "denoise/variational.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace clsk::denoise {

namespace {

constexpr int kMaxHalvings = 60;

using Index = Eigen::Index;

nn::Matrix gather(const nn::Matrix& m, const std::vector<Index>& cols) {
  nn::Matrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = m.col(cols[j]);
  return out;
}

// G per column, given the network output at u.
Eigen::VectorXd column_objective(const nn::Matrix& u, const nn::Matrix& v, const nn::Matrix& f, double lambda) {
  return (u - v).colwise().squaredNorm().transpose() + lambda * f.colwise().squaredNorm().transpose();
}

}  // namespace

void DenoiseConfig::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorCode::kConfig, "lambda must be non-negative");
  require(std::isfinite(step_size) && step_size > 0.0, ErrorCode::kConfig, "step size must be positive");
  require(tolerance >= 0.0, ErrorCode::kConfig, "tolerance must be non-negative");
}

double objective(const nn::ReluNet& net, std::span<const double> u, std::span<const double> v, double lambda) {
  require(u.size() == v.size() && u.size() == net.input_dim(), ErrorCode::kShape,
          "vector dimension does not match the model input");
  const std::vector<double> f = nn::forward(net, u);
  double g = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) g += (u[i] - v[i]) * (u[i] - v[i]);
  double r = 0.0;
  for (double fi : f) r += fi * fi;
  return g + lambda * r;
}

std::vector<double> objective_gradient(const nn::ReluNet& net, std::span<const double> u,
                                       std::span<const double> v, double lambda) {
  require(u.size() == v.size() && u.size() == net.input_dim(), ErrorCode::kShape,
          "vector dimension does not match the model input");
  const std::vector<double> f = nn::forward(net, u);
  std::vector<double> g = nn::input_gradient(net, u, f);
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = 2.0 * (u[i] - v[i]) + 2.0 * lambda * g[i];
  return g;
}

std::vector<double> denoise_vector(const nn::ReluNet& net, std::span<const double> v, const DenoiseConfig& cfg) {
  require(v.size() == net.input_dim(), ErrorCode::kShape, "vector dimension does not match the model input");
  const nn::Matrix vm = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
  const nn::Matrix u = denoise_batch(net, vm, cfg);
  return std::vector<double>(u.data(), u.data() + u.size());
}

nn::Matrix denoise_batch(const nn::ReluNet& net, const nn::Matrix& v, const DenoiseConfig& cfg) {
  cfg.validate();
  require(static_cast<std::size_t>(v.rows()) == net.input_dim(), ErrorCode::kShape,
          "batch dimension does not match the model input");
  require(v.allFinite(), ErrorCode::kConfig, "observations must be finite");
  nn::Matrix u = v;
  if (cfg.lambda == 0.0 || v.cols() == 0) return u;

  const Index n = v.cols();
  Eigen::VectorXd step = Eigen::VectorXd::Constant(n, cfg.step_size);
  std::vector<Index> active(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;

  for (std::uint64_t t = 0; t < cfg.steps && !active.empty(); ++t) {
    const nn::Matrix ua = gather(u, active);
    const nn::Matrix va = gather(v, active);
    const nn::ForwardTrace trace = nn::forward_batch(net, ua);
    nn::Matrix jtf(ua.rows(), ua.cols());
    nn::backward(net, trace, trace.output, {}, &jtf);
    const nn::Matrix grad = 2.0 * (ua - va) + 2.0 * cfg.lambda * jtf;
    const Eigen::VectorXd g_now = column_objective(ua, va, trace.output, cfg.lambda);

    // Columns still looking for an acceptable step, as positions into `active`.
    std::vector<std::size_t> pending(active.size());
    for (std::size_t j = 0; j < active.size(); ++j) pending[j] = j;
    std::vector<bool> done(active.size(), false);

    for (int attempt = 0; !pending.empty(); ++attempt) {
      nn::Matrix cand(ua.rows(), static_cast<Index>(pending.size()));
      nn::Matrix vc(ua.rows(), static_cast<Index>(pending.size()));
      for (std::size_t j = 0; j < pending.size(); ++j) {
        const auto a = static_cast<Index>(pending[j]);
        cand.col(static_cast<Index>(j)) = ua.col(a) - step(active[pending[j]]) * grad.col(a);
        vc.col(static_cast<Index>(j)) = va.col(a);
      }
      if (!cand.allFinite()) {
        fail(ErrorCode::kDivergence, "denoising iterate is not finite at step " + std::to_string(t + 1));
      }
      Eigen::VectorXd g_new;
      if (cfg.backtracking) {
        g_new = column_objective(cand, vc, nn::forward_batch(net, cand).output, cfg.lambda);
      }
      std::vector<std::size_t> retry;
      for (std::size_t j = 0; j < pending.size(); ++j) {
        const std::size_t a = pending[j];
        const Index col = active[a];
        const bool increased = cfg.backtracking && g_new(static_cast<Index>(j)) > g_now(static_cast<Index>(a));
        if (increased && attempt < kMaxHalvings) {
          step(col) *= 0.5;
          retry.push_back(a);
          continue;
        }
        if (increased) {
          done[a] = true;  // no descent step found: treat as converged
          continue;
        }
        const double moved = (cand.col(static_cast<Index>(j)) - ua.col(static_cast<Index>(a))).norm();
        u.col(col) = cand.col(static_cast<Index>(j));
        if (moved <= cfg.tolerance) done[a] = true;
      }
      pending = std::move(retry);
    }

    std::vector<Index> next;
    next.reserve(active.size());
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (!done[a]) next.push_back(active[a]);
    }
    active = std::move(next);
  }
  return u;
}

}  // namespace clsk::denoise

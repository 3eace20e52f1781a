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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clsgd/density.hpp"
#include "clsgd/objective.hpp"
#include "clsgd/schedule.hpp"
#include "clsgd/train.hpp"
#include "error.hpp"
#include "nn/relu_net.hpp"
#include "sketch/discretized_operator.hpp"
#include "sketch/grid.hpp"
#include "sketch/sketch_state.hpp"
#include "support/gradient_check.hpp"
#include "support/oracles.hpp"

using namespace clsk;
using namespace clsk::clsgd;
using sketch::Complex;
using sketch::ComplexVector;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected clsk::Error");
  return ErrorCode::kConfig;
}

// Unnormalized density that ignores its parameters.
class FlatDensity final : public ParametricDensity {
 public:
  std::size_t dim() const override { return 2; }
  std::size_t param_count() const override { return 3; }
  std::unique_ptr<DensityEvaluation> evaluate(std::span<const double>, const Eigen::MatrixXd& points) const override {
    struct Eval final : DensityEvaluation {
      explicit Eval(Eigen::Index n) { values_.assign(static_cast<std::size_t>(n), 2.0); }
      std::vector<double> param_gradient(std::span<const double>) const override { return {0.0, 0.0, 0.0}; }
    };
    return std::make_unique<Eval>(points.cols());
  }
};

// Sketch of a compact blob of points inside the unit square.
sketch::Sketch blob_sketch(const sketch::FrequencySet& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.08);
  Eigen::MatrixXd pts(2, 4000);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    pts(0, i) = 0.4 + g(rng);
    pts(1, i) = 0.6 + g(rng);
  }
  return sketch::sketch_points(f, pts);
}

sketch::Sketch wrap(const sketch::FrequencySet& f, ComplexVector v) {
  sketch::Sketch s;
  s.spec = f.spec();
  s.n = 1;
  s.values = std::move(v);
  return s;
}

}  // namespace

TEST_SUITE("clsgd") {
  TEST_CASE("alpha least squares uses the modulus of the projection") {
    const ComplexVector b{{1.0, 0.0}, {0.0, 1.0}};
    const ComplexVector z{{2.0, 0.0}, {0.0, 2.0}};
    CHECK(alpha_least_squares(b, z) == doctest::Approx(2.0));
    const ComplexVector zr{{0.0, 2.0}, {-2.0, 0.0}};  // j * 2 b
    CHECK(alpha_least_squares(b, zr) == doctest::Approx(2.0));
    const ComplexVector neg{{-3.0, 0.0}, {0.0, -3.0}};
    CHECK(alpha_least_squares(b, neg) == doctest::Approx(3.0));
    CHECK(code_of([] { alpha_least_squares(ComplexVector(2), ComplexVector(2, 1.0)); }) ==
          ErrorCode::kDegenerate);
  }

  TEST_CASE("naive objective with alpha zero") {
    const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 3);
    const ReluDensity dens(c.dims);
    const double zz = sketch::squared_norm(c.z);
    auto r = naive_loss_and_gradient(dens, c.params, c.freqs, c.p, c.z, 0.0);
    CHECK(r.loss == doctest::Approx(zz).epsilon(1e-14));
    for (double g : r.gradient) CHECK(g == 0.0);
    CHECK(monitor_loss(dens, c.params, c.freqs, c.p, c.z, 0.0) == doctest::Approx(zz).epsilon(1e-14));
  }

  TEST_CASE("naive loss matches its definition and auto alpha is reported") {
    const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 4);
    const ReluDensity dens(c.dims);
    const auto eval = dens.evaluate(c.params, c.p.points);
    const auto bmu = clsk::testing::naive_apply(c.freqs.table(), c.p.points, eval->values());
    const double alpha = alpha_least_squares(bmu, c.z);
    double loss = 0.0;
    for (std::size_t l = 0; l < bmu.size(); ++l) loss += std::norm(alpha * bmu[l] - c.z[l]);
    const auto r = naive_loss_and_gradient(dens, c.params, c.freqs, c.p, c.z, std::nullopt);
    CHECK(r.alpha == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(r.loss == doctest::Approx(loss).epsilon(1e-12));
  }

  TEST_CASE("naive gradient matches central differences") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 100 + s);
      CHECK(clsk::testing::naive_fd_error(c) <= 1e-6);
    }
    const auto wide = clsk::testing::make_gradient_case({3, 6, 5, 4}, 20, 12, 9);
    CHECK(clsk::testing::naive_fd_error(wide) <= 1e-6);
  }

  TEST_CASE("streamed and dense operators give the same gradient") {
    const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 5);
    const ReluDensity dens(c.dims);
    const auto a = naive_loss_and_gradient(dens, c.params, c.freqs, c.p, c.z, c.alpha);
    const auto b = naive_loss_and_gradient(dens, c.params, c.freqs, c.p, c.z, c.alpha, 0);
    CHECK(clsk::testing::relative_error(a.gradient, b.gradient) <= 1e-13);
  }

  TEST_CASE("two-grid direction matches central differences of its surrogate") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 200 + s);
      CHECK(clsk::testing::unbiased_fd_error(c) <= 1e-6);
    }
  }

  TEST_CASE("two-grid direction vanishes with a matched sketch or a flat density") {
    auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 32, 16, 6);
    const ReluDensity dens(c.dims);
    const auto eval_q = dens.evaluate(c.params, c.q.points);
    ComplexVector z = sketch::apply_discretized_operator(c.freqs, c.q, eval_q->values());
    for (auto& v : z) v *= c.alpha;
    for (double g : unbiased_direction(dens, c.params, c.freqs, c.p, c.q, c.alpha, z)) {
      CHECK(std::abs(g) <= 1e-12);
    }
    const FlatDensity flat;
    const std::vector<double> theta{0.1, 0.2, 0.3};
    for (double g : unbiased_direction(flat, theta, c.freqs, c.p, c.q, 1.0, c.z)) CHECK(g == 0.0);
  }

  TEST_CASE("shared grid seeds are refused unless allowed") {
    const auto c = clsk::testing::make_gradient_case({2, 8, 4, 1}, 16, 8, 7);
    const ReluDensity dens(c.dims);
    CHECK(code_of([&] { unbiased_direction(dens, c.params, c.freqs, c.p, c.p, 1.0, c.z); }) ==
          ErrorCode::kIndependence);
    UnbiasedOptions allow;
    allow.allow_shared_seed = true;
    CHECK(unbiased_direction(dens, c.params, c.freqs, c.p, c.p, 1.0, c.z, allow).size() == c.params.size());
  }

  TEST_CASE("cosine parameter density: closed-form gradient and derivative sketch") {
    const CosineParamDensity dens({1, 1});
    const auto f = sketch::sample_frequencies(48, 2, 6.0, 3);
    const ComplexVector z = dens.sketch(f, 0.3);
    auto G = [&](double th) {
      auto s = dens.sketch(f, th);
      for (std::size_t l = 0; l < s.size(); ++l) s[l] -= z[l];
      return sketch::squared_norm(s);
    };
    for (double th : {-0.5, 0.0, 0.3, 0.8}) {
      const double fd = (G(th + 1e-5) - G(th - 1e-5)) / 2e-5;
      CHECK(dens.exact_gradient(f, th, z) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(std::abs(dens.exact_gradient(f, 0.3, z)) <= 1e-14);
    // S(mu_theta) is affine in theta with slope S(cos)
    const auto s0 = dens.sketch(f, 0.0), s1 = dens.sketch(f, 1.0), ds = dens.sketch_derivative(f);
    for (std::size_t l = 0; l < ds.size(); ++l) CHECK(std::abs(s1[l] - s0[l] - ds[l]) <= 1e-14);
    CHECK(dens.l2_derivative_inner(0.4) == doctest::Approx(0.2));
    CHECK_THROWS_AS(dens.evaluate(std::vector<double>{1.5}, Eigen::MatrixXd::Zero(2, 3)), Error);
  }

  TEST_CASE("cosine density parameter gradient is the weighted basis sum") {
    const CosineParamDensity dens({2, -1});
    const sketch::Grid g = sketch::sample_grid(10, 2, 4);
    const auto eval = dens.evaluate(std::vector<double>{0.25}, g.points);
    std::vector<double> w(10);
    double expect = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      w[i] = static_cast<double>(i) - 4.5;
      const double arg = 2.0 * std::numbers::pi * (2.0 * g.points(0, i) - g.points(1, i));
      expect += w[i] * std::cos(arg);
      CHECK(eval->values()[i] == doctest::Approx(1.0 + 0.25 * std::cos(arg)));
    }
    CHECK(eval->param_gradient(w)[0] == doctest::Approx(expect));
  }

  TEST_CASE("step schedules") {
    StepRule dim{StepKind::kDiminishing, 1.0};
    CHECK(step_schedule(dim, 4) == 0.25);
    StepRule con{StepKind::kConstant, 1e-3};
    for (std::uint64_t k : {1ULL, 7ULL, 1000000ULL}) CHECK(step_schedule(con, k) == 1e-3);
    CHECK(code_of([&] { step_schedule(con, 0); }) == ErrorCode::kConfig);
    CHECK(code_of([] { StepRule{StepKind::kConstant, -1.0}.validate(); }) == ErrorCode::kConfig);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t k = 1; k <= 10000; ++k) {
      const double t = step_schedule(dim, k);
      s += t;
      s2 += t * t;
    }
    CHECK(s > 9.78);  // H_10000 = 9.7876...
    CHECK(std::abs(s2 - std::numbers::pi * std::numbers::pi / 6.0) < 1.0001e-4);
  }

  TEST_CASE("stepper applies plain and Adam updates") {
    std::vector<double> p{1.0, -2.0};
    Stepper sgd(StepRule{StepKind::kDiminishing, 0.5}, 2);
    sgd.step(p, std::vector<double>{2.0, 4.0}, 2);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(-3.0));

    // first Adam step moves each coordinate by about lr * sign(g)
    std::vector<double> q{0.0, 0.0, 0.0};
    Stepper adam(StepRule{StepKind::kAdam, 0.01}, 3);
    adam.step(q, std::vector<double>{5.0, -0.2, 0.0}, 1);
    CHECK(q[0] == doctest::Approx(-0.01).epsilon(1e-6));
    CHECK(q[1] == doctest::Approx(0.01).epsilon(1e-6));
    CHECK(q[2] == 0.0);
    CHECK(code_of([&] { adam.step(q, std::vector<double>{1.0}, 2); }) == ErrorCode::kShape);
  }

  TEST_CASE("algorithm names round-trip") {
    for (auto a : {Algorithm::kNaive, Algorithm::kUnbiased, Algorithm::kFixedGrid}) {
      CHECK(parse_algorithm(algorithm_name(a)) == a);
    }
    CHECK(parse_algorithm("fixed_grid") == Algorithm::kFixedGrid);
    CHECK(code_of([] { parse_algorithm("sgd"); }) == ErrorCode::kConfig);
  }

  TEST_CASE("zero iterations leave the model untouched") {
    const auto f = sketch::sample_frequencies(32, 2, 5.0, 1);
    const auto z = blob_sketch(f, 2);
    const ReluDensity dens({2, 16, 8});
    const auto net = nn::init_network(std::vector<std::size_t>{2, 16, 8}, 5);
    std::vector<double> params(net.params().begin(), net.params().end());
    const auto before = params;
    TrainConfig cfg;
    cfg.iterations = 0;
    cfg.grid_points = 64;
    const auto h = train(dens, params, cfg, z, f);
    CHECK(params == before);
    REQUIRE(h.records.size() == 1);
    CHECK(h.records[0].iter == 0);
    CHECK(h.records[0].step == 0.0);
  }

  TEST_CASE("training is deterministic, records checkpoints and reduces the monitored loss") {
    const auto f = sketch::sample_frequencies(64, 2, 5.0, 1);
    const auto z = blob_sketch(f, 2);
    const std::vector<std::size_t> dims{2, 16, 16, 8};
    const ReluDensity dens(dims);
    TrainConfig cfg;
    cfg.iterations = 300;
    cfg.grid_points = 128;
    cfg.step = {StepKind::kAdam, 1e-2};
    std::vector<std::uint64_t> seen;
    auto run = [&](std::vector<std::uint64_t>* iters) {
      const auto net = nn::init_network(dims, 11);
      std::vector<double> params(net.params().begin(), net.params().end());
      const auto h = train(dens, params, cfg, z, f, [&](const TrainRecord& r) {
        if (iters) iters->push_back(r.iter);
      });
      return std::make_pair(params, h);
    };
    const auto [pa, ha] = run(&seen);
    const auto [pb, hb] = run(nullptr);
    CHECK(pa == pb);
    REQUIRE(ha.records.size() == hb.records.size());
    for (std::size_t i = 0; i < ha.records.size(); ++i) {
      CHECK(ha.records[i].loss == hb.records[i].loss);
      CHECK(ha.records[i].alpha == hb.records[i].alpha);
    }
    CHECK(ha.records.size() == 101);
    CHECK(seen.front() == 0);
    CHECK(seen[1] == 3);
    CHECK(seen.back() == 300);
    CHECK(ha.records.back().loss < 0.5 * ha.records.front().loss);

    cfg.grid_seed = 2;
    const auto [pc, hc] = run(nullptr);
    CHECK(pc != pa);
  }

  TEST_CASE("snapshots equal the parameters of a shorter run") {
    const auto f = sketch::sample_frequencies(32, 2, 5.0, 3);
    const auto z = blob_sketch(f, 4);
    const std::vector<std::size_t> dims{2, 8, 8};
    const ReluDensity dens(dims);
    const auto net = nn::init_network(dims, 2);
    for (auto algo : {Algorithm::kNaive, Algorithm::kUnbiased}) {
      CAPTURE(algorithm_name(algo));
      TrainConfig cfg;
      cfg.algorithm = algo;
      cfg.iterations = 40;
      cfg.grid_points = 64;
      cfg.checkpoint_interval = 10;
      cfg.step = {StepKind::kAdam, 1e-2};
      std::vector<std::vector<double>> snaps;
      std::vector<double> params(net.params().begin(), net.params().end());
      train(dens, params, cfg, z, f, {}, [&](const TrainRecord& r, std::span<const double> p) {
        CHECK(r.iter == 10 * snaps.size());
        snaps.emplace_back(p.begin(), p.end());
      });
      REQUIRE(snaps.size() == 5);
      CHECK(snaps.back() == params);
      cfg.iterations = 20;
      std::vector<double> shorter(net.params().begin(), net.params().end());
      train(dens, shorter, cfg, z, f);
      CHECK(snaps[2] == shorter);
    }
  }

  TEST_CASE("unbiased and fixed-grid modes recover a cosine parameter") {
    const CosineParamDensity dens({1, 0});
    const auto f = sketch::sample_frequencies(32, 2, 6.0, 8);
    const auto z = wrap(f, dens.sketch(f, 0.6));
    for (auto algo : {Algorithm::kUnbiased, Algorithm::kFixedGrid, Algorithm::kNaive}) {
      CAPTURE(algorithm_name(algo));
      TrainConfig cfg;
      cfg.algorithm = algo;
      cfg.iterations = 2000;
      cfg.grid_points = 400;
      cfg.alpha = 1.0;
      cfg.step = {StepKind::kAdam, 5e-3};
      std::vector<double> theta{0.0};
      const auto h = train(dens, theta, cfg, z, f);
      CHECK(theta[0] == doctest::Approx(0.6).epsilon(0.1));
      CHECK(h.records.back().loss < h.records.front().loss);
    }
  }

  TEST_CASE("training errors") {
    const auto f = sketch::sample_frequencies(16, 2, 5.0, 1);
    const auto g = sketch::sample_frequencies(16, 2, 5.0, 2);
    const auto z = blob_sketch(f, 2);
    const std::vector<std::size_t> dims{2, 8, 4};
    const ReluDensity dens(dims);
    const auto net = nn::init_network(dims, 1);
    std::vector<double> params(net.params().begin(), net.params().end());
    TrainConfig cfg;
    cfg.iterations = 5;
    cfg.grid_points = 16;
    CHECK(code_of([&] { train(dens, params, cfg, z, g); }) == ErrorCode::kFingerprint);
    const ReluDensity three({3, 8, 4});
    CHECK(code_of([&] {
            std::vector<double> p3(three.param_count(), 0.1);
            train(three, p3, cfg, z, f);
          }) == ErrorCode::kShape);
    std::vector<double> short_params(3, 0.0);
    CHECK(code_of([&] { train(dens, short_params, cfg, z, f); }) == ErrorCode::kShape);
    TrainConfig bad = cfg;
    bad.grid_points = 0;
    CHECK(code_of([&] { train(dens, params, bad, z, f); }) == ErrorCode::kConfig);
    bad = cfg;
    bad.alpha = -1.0;
    CHECK(code_of([&] { train(dens, params, bad, z, f); }) == ErrorCode::kConfig);

    TrainConfig wild = cfg;
    wild.alpha = 1.0;
    wild.step = {StepKind::kConstant, 1e300};
    ComplexVector huge(16, Complex(1e200, 0.0));
    const auto zh = wrap(f, huge);
    try {
      train(dens, params, wild, zh, f);
      FAIL("expected divergence");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDivergence);
      CHECK(std::string(e.what()).find("iteration") != std::string::npos);
    }
  }
}

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
#include <random>
#include <set>

#include "data/generators.hpp"
#include "data/normalizer.hpp"
#include "denoise/metrics.hpp"
#include "denoise/patches.hpp"
#include "denoise/variational.hpp"
#include "error.hpp"
#include "nn/relu_net.hpp"
#include "support/oracles.hpp"

using namespace clsk;
using namespace clsk::denoise;

namespace {

nn::ReluNet patch_net(std::uint64_t seed) {
  return nn::init_network(std::vector<std::size_t>{9, 16, 16, 8}, seed);
}

GrayImage ramp(std::size_t w, std::size_t h) {
  GrayImage img(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = static_cast<double>(x * 7 + y * 13 % 11) / (7.0 * w + 11.0);
  }
  return img;
}

// Window count per axis by brute-force enumeration of which top-left
// offsets a border-clamped sliding window visits.
std::size_t enumerate_windows(std::size_t length, std::size_t side, std::size_t stride) {
  std::set<std::size_t> starts;
  for (std::size_t o = 0;; o += stride) {
    starts.insert(std::min(o, length - side));
    if (o + side >= length) break;
  }
  return starts.size();
}

}  // namespace

TEST_SUITE("denoise") {
  TEST_CASE("lambda zero is the identity") {
    const auto net = patch_net(1);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.5, 0.3);
    std::vector<double> v(9);
    for (double& x : v) x = g(rng);
    DenoiseConfig cfg;
    CHECK(denoise_vector(net, v, cfg) == v);
    nn::Matrix batch(9, 20);
    for (Eigen::Index i = 0; i < batch.size(); ++i) batch.data()[i] = g(rng);
    CHECK(denoise_batch(net, batch, cfg) == batch);
  }

  TEST_CASE("a net with zero weights leaves the input fixed") {
    auto net = patch_net(3);
    for (double& p : net.mutable_params()) p = 0.0;
    // non-zero output bias: f is constant, its Jacobian is zero
    for (std::size_t i = 0; i < 8; ++i) net.mutable_params()[net.bias_offset(2) + i] = 0.5;
    const std::vector<double> v{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    DenoiseConfig cfg;
    cfg.lambda = 3.0;
    CHECK(denoise_vector(net, v, cfg) == v);
  }

  TEST_CASE("objective gradient matches central differences away from kinks") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0;
    for (std::uint64_t s = 0; checked < 20; ++s) {
      auto net = patch_net(100 + s);
      std::normal_distribution<double> g(0.0, 0.3);
      for (std::size_t k = 0; k < net.num_layers(); ++k) {
        for (std::size_t i = 0; i < net.dims()[k + 1]; ++i) net.mutable_params()[net.bias_offset(k) + i] = g(rng);
      }
      std::vector<double> x(9), v(9);
      for (double& t : x) t = u(rng);
      for (double& t : v) t = u(rng);
      // skip points near a kink
      Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(x.data(), 9);
      double margin = INFINITY;
      for (std::size_t k = 0; k + 1 < net.num_layers(); ++k) {
        Eigen::VectorXd z = net.weights(k) * a + Eigen::VectorXd(net.bias(k));
        margin = std::min(margin, z.cwiseAbs().minCoeff());
        a = z.cwiseMax(0.0);
      }
      if (margin < 1e-3) continue;
      ++checked;
      const double lambda = 0.7;
      const auto grad = objective_gradient(net, x, v, lambda);
      const auto fd = clsk::testing::central_difference(
          [&](const std::vector<double>& uu) { return objective(net, uu, v, lambda); }, x, 1e-5);
      CHECK(clsk::testing::relative_error(grad, fd) <= 1e-6);
    }
  }

  TEST_CASE("objective value") {
    auto net = patch_net(5);
    const std::vector<double> u(9, 0.3), v(9, 0.5);
    const auto f = nn::forward(net, u);
    double ff = 0.0;
    for (double t : f) ff += t * t;
    CHECK(objective(net, u, v, 2.0) == doctest::Approx(9 * 0.04 + 2.0 * ff));
  }

  TEST_CASE("iterations never increase the objective") {
    const auto net = patch_net(6);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.5, 0.2);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> v(9);
      for (double& x : v) x = g(rng);
      const double lambda = 5.0;
      double prev = objective(net, v, v, lambda);
      for (std::uint64_t steps = 1; steps <= 40; ++steps) {
        DenoiseConfig cfg;
        cfg.lambda = lambda;
        cfg.steps = steps;
        cfg.step_size = 2.0;  // deliberately too large; backtracking must catch it
        const auto u = denoise_vector(net, v, cfg);
        const double cur = objective(net, u, v, lambda);
        CHECK(cur <= prev + 1e-12 * std::abs(prev));
        prev = cur;
      }
    }
  }

  TEST_CASE("batch columns are solved independently") {
    const auto net = patch_net(8);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.5, 0.2);
    nn::Matrix batch(9, 6);
    for (Eigen::Index i = 0; i < batch.size(); ++i) batch.data()[i] = g(rng);
    DenoiseConfig cfg;
    cfg.lambda = 1.0;
    // batched and single-column products round differently in the last bit;
    // keep the run short enough that no backtracking decision flips
    cfg.steps = 50;
    const nn::Matrix out = denoise_batch(net, batch, cfg);
    for (Eigen::Index j = 0; j < 6; ++j) {
      const std::vector<double> v(batch.col(j).data(), batch.col(j).data() + 9);
      const auto u = denoise_vector(net, v, cfg);
      for (Eigen::Index i = 0; i < 9; ++i) CHECK(std::abs(out(i, j) - u[static_cast<std::size_t>(i)]) <= 1e-14);
    }
  }

  TEST_CASE("denoise config validation") {
    DenoiseConfig cfg;
    cfg.lambda = -1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.step_size = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    const auto net = patch_net(1);
    CHECK_THROWS_AS(denoise_vector(net, std::vector<double>(4, 0.0), DenoiseConfig{}), Error);
  }

  TEST_CASE("patch counts") {
    CHECK(extract_patches(ramp(3, 3), {3, 3}).positions.size() == 1);
    const auto four = extract_patches(ramp(4, 4), {3, 1});
    REQUIRE(four.positions.size() == 4);
    CHECK(four.positions[0].x == 0);
    CHECK(four.positions[1].x == 1);
    CHECK(four.positions[2].y == 1);
    CHECK(four.positions[3].x == 1);
    CHECK(four.positions[3].y == 1);
    CHECK(extract_patches(ramp(128, 128), {3, 3}).positions.size() == 1849);
    for (std::size_t len : {3, 4, 5, 9, 10, 128, 129}) {
      for (std::size_t stride : {1, 2, 3}) {
        CHECK(window_offsets(len, 3, stride).size() == enumerate_windows(len, 3, stride));
      }
    }
    CHECK_THROWS_AS(extract_patches(ramp(2, 5), {3, 3}), Error);
    CHECK_THROWS_AS(extract_patches(ramp(9, 9), {3, 4}), Error);
  }

  TEST_CASE("patches are flattened row-major") {
    const GrayImage img = ramp(5, 4);
    const auto set = extract_patches(img, {3, 2});
    for (std::size_t n = 0; n < set.positions.size(); ++n) {
      const auto& pos = set.positions[n];
      for (std::size_t dy = 0; dy < 3; ++dy) {
        for (std::size_t dx = 0; dx < 3; ++dx) {
          CHECK(set.patches(static_cast<Eigen::Index>(dy * 3 + dx), static_cast<Eigen::Index>(n)) ==
                img.at(pos.x + dx, pos.y + dy));
        }
      }
    }
  }

  TEST_CASE("extract then reassemble is the identity") {
    const GrayImage img = ramp(17, 11);
    for (std::size_t stride : {1, 2, 3}) {
      for (auto agg : {Aggregation::kAverage, Aggregation::kCenter}) {
        const auto set = extract_patches(img, {3, stride, agg});
        const GrayImage back = reassemble(set, 17, 11, 3, agg);
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
          CHECK(back.pixels[i] == doctest::Approx(img.pixels[i]).epsilon(1e-15));
        }
      }
    }
  }

  TEST_CASE("average aggregation takes the midpoint of disagreeing patches") {
    PatchSet set;
    set.patches = nn::Matrix::Constant(9, 2, 0.4);
    set.positions = {{0, 0}, {1, 0}};
    set.patches(1, 1) = 0.6;  // pixel (2, 0) from the second patch
    set.patches(2, 0) = 0.4;  // pixel (2, 0) from the first patch
    const GrayImage out = reassemble(set, 4, 3, 3, Aggregation::kAverage);
    CHECK(out.at(2, 0) == doctest::Approx(0.5));
    CHECK(out.at(0, 0) == doctest::Approx(0.4));
  }

  TEST_CASE("centre aggregation picks the nearest centre, ties to the first patch") {
    PatchSet set;
    set.patches.resize(9, 2);
    set.patches.col(0).setConstant(0.2);
    set.patches.col(1).setConstant(0.8);
    set.positions = {{0, 0}, {1, 0}};
    const GrayImage out = reassemble(set, 4, 3, 3, Aggregation::kCenter);
    CHECK(out.at(0, 1) == 0.2);
    CHECK(out.at(3, 1) == 0.8);
    CHECK(out.at(1, 1) == 0.2);  // centre of the first patch
    CHECK(out.at(2, 1) == 0.8);  // centre of the second patch
    // equidistant from both centres would need a half-way column; use stride 2
    PatchSet tie;
    tie.patches.resize(9, 2);
    tie.patches.col(0).setConstant(0.3);
    tie.patches.col(1).setConstant(0.7);
    tie.positions = {{0, 0}, {2, 0}};
    const GrayImage t = reassemble(tie, 5, 3, 3, Aggregation::kCenter);
    CHECK(t.at(2, 1) == 0.3);
  }

  TEST_CASE("reassembly rejects gaps and clamps") {
    PatchSet set;
    set.patches = nn::Matrix::Constant(9, 1, 1.7);
    set.positions = {{0, 0}};
    CHECK_THROWS_AS(reassemble(set, 4, 3, 3, Aggregation::kAverage), Error);
    const GrayImage out = reassemble(set, 3, 3, 3, Aggregation::kAverage);
    for (double p : out.pixels) CHECK(p == 1.0);
  }

  TEST_CASE("denoise_image with lambda zero returns the clamped input") {
    GrayImage img = ramp(20, 14);
    img.at(3, 3) = 1.4;
    img.at(5, 2) = -0.2;
    const auto net = patch_net(2);
    const data::AffineNormalizer norm(std::vector<double>(9, -0.1), std::vector<double>(9, 1.1));
    const GrayImage out = denoise_image(net, img, DenoiseConfig{}, PatchConfig{}, &norm);
    GrayImage expect = img;
    expect.clamp();
    CHECK(out.pixels == expect.pixels);
  }

  TEST_CASE("stride-1 pipeline keeps a constant image constant without a regularizer") {
    const GrayImage img(12, 9, 0.42);
    const auto net = patch_net(3);
    const GrayImage out = denoise_image(net, img, DenoiseConfig{}, {3, 1, Aggregation::kAverage}, nullptr);
    for (double p : out.pixels) CHECK(p == doctest::Approx(0.42).epsilon(1e-15));
  }

  TEST_CASE("denoising in normalized coordinates matches the documented pipeline") {
    GrayImage img = ramp(9, 9);
    const auto net = patch_net(12);
    const data::AffineNormalizer norm(std::vector<double>(9, 0.0), std::vector<double>(9, 1.0));
    DenoiseConfig cfg;
    cfg.lambda = 0.5;
    cfg.steps = 30;
    const PatchConfig pcfg{3, 3, Aggregation::kAverage};
    const GrayImage out = denoise_image(net, img, cfg, pcfg, &norm);
    auto set = extract_patches(img, pcfg);
    norm.apply_inplace(set.patches);
    set.patches = denoise_batch(net, set.patches, cfg);
    norm.invert_inplace(set.patches);
    const GrayImage manual = reassemble(set, 9, 9, 3, Aggregation::kAverage);
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
      CHECK(out.pixels[i] == doctest::Approx(manual.pixels[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("aggregation names") {
    CHECK(parse_aggregation("average") == Aggregation::kAverage);
    CHECK(parse_aggregation("center") == Aggregation::kCenter);
    CHECK_THROWS_AS(parse_aggregation("median"), Error);
  }

  TEST_CASE("snr and psnr") {
    const std::vector<double> clean{1.0, -1.0, 1.0, -1.0};
    const std::vector<double> noisy{1.1, -0.9, 0.9, -1.1};
    CHECK(snr_db(clean, noisy) == doctest::Approx(20.0));
    const std::vector<double> half{1.05, -0.95, 0.95, -1.05};
    CHECK(snr_gain_db(clean, noisy, half) == doctest::Approx(20.0 * std::log10(2.0)));
    CHECK(snr_gain_db(clean, noisy, clean) == kDbCap);
    CHECK_THROWS_AS(snr_db(std::vector<double>(4, 0.0), noisy), Error);

    const std::vector<double> ref(100, 0.5);
    std::vector<double> off(100, 0.6);
    CHECK(psnr_db(ref, off) == doctest::Approx(20.0));
    CHECK(psnr_db(ref, ref) == kDbCap);
    CHECK_THROWS_AS(psnr_db(ref, std::vector<double>(3, 0.0)), Error);
  }

  TEST_CASE("psnr of sigma 0.07 noise is about 23.1 dB") {
    const GrayImage img = data::synthetic_image(256, 256, 1);
    const auto noisy = data::add_gaussian_noise(img.pixels, 0.07, 2);
    CHECK(psnr_db(img.pixels, noisy) == doctest::Approx(23.1).epsilon(0.1 / 23.1));
  }
}

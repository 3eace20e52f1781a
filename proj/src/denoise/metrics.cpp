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

#include "denoise/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace clsk::denoise {

namespace {

void check_shapes(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::kShape, "signals differ in length");
  require(!a.empty(), ErrorCode::kShape, "signals are empty");
}

double squared_error(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

double snr_db(std::span<const double> clean, std::span<const double> x) {
  check_shapes(clean, x);
  double energy = 0.0;
  for (double c : clean) energy += c * c;
  require(energy > 0.0, ErrorCode::kDegenerate, "clean signal is zero; SNR is undefined");
  const double err = squared_error(clean, x);
  if (err == 0.0) return kDbCap;
  return std::min(kDbCap, 10.0 * std::log10(energy / err));
}

double snr_gain_db(std::span<const double> clean, std::span<const double> noisy,
                   std::span<const double> denoised) {
  const double after = snr_db(clean, denoised);
  if (after == kDbCap) return kDbCap;
  return after - snr_db(clean, noisy);
}

double psnr_db(std::span<const double> reference, std::span<const double> test) {
  check_shapes(reference, test);
  const double mse = squared_error(reference, test) / static_cast<double>(reference.size());
  if (mse == 0.0) return kDbCap;
  return std::min(kDbCap, 10.0 * std::log10(1.0 / mse));
}

}  // namespace clsk::denoise

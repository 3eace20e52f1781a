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

#ifndef CLSKETCH_DENOISE_METRICS_HPP_
#define CLSKETCH_DENOISE_METRICS_HPP_

#include <span>

namespace clsk::denoise {

/// Reported in place of +inf when the error is exactly zero.
inline constexpr double kDbCap = 999.0;

/// 10 log10(||clean||^2 / ||clean - x||^2) over the whole signal.
double snr_db(std::span<const double> clean, std::span<const double> x);

/// snr(denoised) - snr(noisy); kDbCap when the denoised signal is exact.
double snr_gain_db(std::span<const double> clean, std::span<const double> noisy,
                   std::span<const double> denoised);

/// 10 log10(1 / MSE) for intensities in [0, 1].
double psnr_db(std::span<const double> reference, std::span<const double> test);

}  // namespace clsk::denoise

#endif  // CLSKETCH_DENOISE_METRICS_HPP_

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

// Branch-free sin/cos over arrays, written so the compiler can vectorize the
// loop. Quadrant reduction uses a three-term Cody-Waite split of pi/2 and the
// fdlibm minimax kernels on [-pi/4, pi/4]. Accurate to a few ulp for
// |x| < 2^19 * pi / 2, which covers every phase <omega, x> met in practice
// (the caller checks the bound).

#ifndef CLSKETCH_SKETCH_FAST_TRIG_HPP_
#define CLSKETCH_SKETCH_FAST_TRIG_HPP_

#include <cmath>
#include <cstddef>

namespace clsk::sketch::detail {

inline constexpr double kMaxPhase = 823549.6;  // 2^19 * pi / 2

inline void sincos_array(const double* __restrict x, double* __restrict s, double* __restrict c,
                         std::size_t n) {
  constexpr double kTwoOverPi = 6.36619772367581382433e-01;
  constexpr double kPio2Hi = 1.57079632673412561417e+00;
  constexpr double kPio2Mid = 6.07710050630396597660e-11;
  constexpr double kPio2Lo = 2.02226624871116645580e-21;
  constexpr double kShift = 6755399441055744.0;  // 1.5 * 2^52, round-to-nearest trick

  constexpr double S1 = -1.66666666666666324348e-01;
  constexpr double S2 = 8.33333333332248946124e-03;
  constexpr double S3 = -1.98412698298579493134e-04;
  constexpr double S4 = 2.75573137070700676789e-06;
  constexpr double S5 = -2.50507602534068634195e-08;
  constexpr double S6 = 1.58969099521155010221e-10;
  constexpr double C1 = 4.16666666666666019037e-02;
  constexpr double C2 = -1.38888888888741095749e-03;
  constexpr double C3 = 2.48015872894767294178e-05;
  constexpr double C4 = -2.75573143513906633035e-07;
  constexpr double C5 = 2.08757232129817482790e-09;
  constexpr double C6 = -1.13596475577881948265e-11;

  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double k = (xi * kTwoOverPi + kShift) - kShift;
    const double r = ((xi - k * kPio2Hi) - k * kPio2Mid) - k * kPio2Lo;
    const double z = r * r;
    const double sr = r + r * z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)))));
    const double cr = 1.0 - 0.5 * z + z * z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
    // Quadrant q = 2 * hi + odd. Selection is done with exact 0/1 products
    // so the loop body stays free of branches.
    const double q = k - 4.0 * std::floor(k * 0.25);
    const double hi = std::floor(q * 0.5);
    const double odd = q - 2.0 * hi;
    const double flip = hi + odd - 2.0 * hi * odd;  // q in {1, 2}
    const double sin_sign = 1.0 - 2.0 * hi;
    const double cos_sign = 1.0 - 2.0 * flip;
    s[i] = sin_sign * (odd * cr + (1.0 - odd) * sr);
    c[i] = cos_sign * (odd * sr + (1.0 - odd) * cr);
  }
}

}  // namespace clsk::sketch::detail

#endif  // CLSKETCH_SKETCH_FAST_TRIG_HPP_

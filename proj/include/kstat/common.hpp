/*
 * include/kstat/common.hpp
 *
 * Copyright 2026 kstat authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace kstat {

/// Highest cumulant/moment order handled anywhere in the library.
inline constexpr int max_order = 8;

/// A sample of real-valued readings.
using Sample = Eigen::ArrayXd;

/// Order-indexed coefficient block: element r-1 holds the order-r entry.
template <class Scalar>
using OrderArray = Eigen::Array<Scalar, max_order, 1>;

/// Falling factorial N_(m) = N(N-1)...(N-m), i.e. m+1 descending factors.
/// Computed in floating point; exact for N below 2^53.
template <class Scalar>
constexpr Scalar falling_factorial(Scalar n, int m) {
    Scalar out = 1;
    for (int i = 0; i <= m; ++i) out *= n - static_cast<Scalar>(i);
    return out;
}

/// Binomial coefficient for the small orders used by the cumulant
/// recursions (n, k <= max_order).
constexpr double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 0; i < k; ++i) out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return out;
}

}  // namespace kstat

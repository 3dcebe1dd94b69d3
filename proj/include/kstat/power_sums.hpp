/*
 * include/kstat/power_sums.hpp
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

#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "kstat/common.hpp"
#include "kstat/errors.hpp"

namespace kstat {

/// Mergeable accumulator of the reading count and the raw power sums
/// S_r = sum_i (X_i - offset)^r, r = 1..8.
///
/// Readings are always accumulated relative to a centering offset: power
/// sums of raw data with a large common mean cancel catastrophically,
/// while k-statistics of order >= 2 are exactly shift-invariant, so the
/// offset costs nothing. k-statistics of order 1 add the offset back.
template <class Scalar>
struct PowerSumsT {
    std::int64_t n = 0;
    Scalar offset = 0;
    OrderArray<Scalar> s = OrderArray<Scalar>::Zero();

    /// Power sum of order r, 1-based.
    Scalar sum(int r) const { return s[r - 1]; }
};

using PowerSums = PowerSumsT<double>;

/// Accumulate a sample against an explicit centering offset.
template <class Derived>
PowerSumsT<typename Derived::Scalar> accumulate(const Eigen::ArrayBase<Derived>& sample,
                                                typename Derived::Scalar offset) {
    using Scalar = typename Derived::Scalar;
    PowerSumsT<Scalar> ps;
    ps.offset = offset;
    ps.n = static_cast<std::int64_t>(sample.size());
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        const Scalar x = sample.derived()(i);
        if (!std::isfinite(static_cast<double>(x)))
            throw input_error("In kstat::accumulate: non-finite reading at index " + std::to_string(i));
        const Scalar d = x - offset;
        Scalar p = 1;
        for (int r = 0; r < max_order; ++r) {
            p *= d;
            ps.s[r] += p;
        }
    }
    return ps;
}

/// Batch-mode accumulation: centers on the sample mean (first pass).
template <class Derived>
PowerSumsT<typename Derived::Scalar> accumulate(const Eigen::ArrayBase<Derived>& sample) {
    using Scalar = typename Derived::Scalar;
    const Scalar offset = sample.size() > 0 ? Scalar(sample.mean()) : Scalar(0);
    return accumulate(sample, offset);
}

/// Componentwise merge. Associative and commutative; the empty
/// accumulator is the identity and adopts the other operand's offset.
template <class Scalar>
PowerSumsT<Scalar> merge(const PowerSumsT<Scalar>& a, const PowerSumsT<Scalar>& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    if (a.offset != b.offset)
        throw input_error("In kstat::merge: offset mismatch (" + std::to_string(static_cast<double>(a.offset)) +
                          " vs " + std::to_string(static_cast<double>(b.offset)) + ")");
    PowerSumsT<Scalar> out;
    out.n = a.n + b.n;
    out.offset = a.offset;
    out.s = a.s + b.s;
    return out;
}

}  // namespace kstat

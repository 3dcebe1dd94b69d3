/*
 * include/kstat/kstatistics.hpp
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
#include <optional>
#include <string>

#include "kstat/common.hpp"
#include "kstat/errors.hpp"
#include "kstat/moments.hpp"
#include "kstat/power_sums.hpp"

namespace kstat {

// Unbiased cumulant estimators ("k-statistics") and the exact sampling
// variances of k3 and k4. Formulae from Kendall & Stuart, The Advanced
// Theory of Statistics, vol. 1, in power-sum form with
// N_(m) = N(N-1)...(N-m):
//
//   k1 = S1/N
//   k2 = (N S2 - S1^2) / N_(1)
//   k3 = (2 S1^3 - 3 N S1 S2 + N^2 S3) / N_(2)
//   k4 = (-6 S1^4 + 12 N S1^2 S2 - 3 N(N-1) S2^2 - 4 N(N+1) S1 S3
//          + N^2(N+1) S4) / N_(3)
//
// Each k_n is an exactly unbiased estimator of kappa_n at finite N, and
// k2..k4 are exactly invariant under shifting the sample by a constant.

namespace detail {

template <class Scalar>
void require_min_n(std::int64_t n, std::int64_t minimum, const char* what) {
    if (n < minimum)
        throw input_error(std::string("In kstat::") + what + ": sample size " + std::to_string(n) +
                          " is below the minimum " + std::to_string(minimum));
}

}  // namespace detail

/// k-statistic of the requested order (1..4). Order 1 adds the centering
/// offset back; orders 2..4 are offset-independent.
template <class Scalar>
Scalar k_stat(const PowerSumsT<Scalar>& ps, int order) {
    const auto n = static_cast<Scalar>(ps.n);
    const Scalar s1 = ps.sum(1);
    switch (order) {
        case 1:
            detail::require_min_n<Scalar>(ps.n, 1, "k_stat(order=1)");
            return s1 / n + ps.offset;
        case 2: {
            detail::require_min_n<Scalar>(ps.n, 2, "k_stat(order=2)");
            const Scalar s2 = ps.sum(2);
            return (n * s2 - s1 * s1) / falling_factorial(n, 1);
        }
        case 3: {
            detail::require_min_n<Scalar>(ps.n, 3, "k_stat(order=3)");
            const Scalar s2 = ps.sum(2), s3 = ps.sum(3);
            return (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / falling_factorial(n, 2);
        }
        case 4: {
            detail::require_min_n<Scalar>(ps.n, 4, "k_stat(order=4)");
            const Scalar s2 = ps.sum(2), s3 = ps.sum(3), s4 = ps.sum(4);
            const Scalar s1_2 = s1 * s1;
            return (-6 * s1_2 * s1_2 + 12 * n * s1_2 * s2 - 3 * n * (n - 1) * s2 * s2 -
                    4 * n * (n + 1) * s1 * s3 + n * n * (n + 1) * s4) /
                   falling_factorial(n, 3);
        }
        default:
            throw input_error("In kstat::k_stat: unsupported order " + std::to_string(order) +
                              " (supported: 1..4)");
    }
}

/// Central sample moments m_r = (1/n) sum_i (X_i - mean)^r, r = 1..8,
/// obtained from offset-centered power sums by the binomial shift.
template <class Scalar>
MomentSetT<Scalar> central_moments(const PowerSumsT<Scalar>& ps) {
    detail::require_min_n<Scalar>(ps.n, 1, "central_moments");
    const auto n = static_cast<Scalar>(ps.n);
    const Scalar d = ps.sum(1) / n;  // mean of the centered data
    MomentSetT<Scalar> m;
    m.central = true;
    for (int r = 1; r <= max_order; ++r) {
        Scalar acc = std::pow(-d, static_cast<Scalar>(r)) * n;  // j = 0 term, S_0 = n
        Scalar dpow = 1;
        for (int j = r; j >= 1; --j) {
            acc += static_cast<Scalar>(binomial(r, j)) * ps.sum(j) * dpow;
            dpow *= -d;
        }
        m.moment(r) = acc / n;
    }
    m.moment(1) = 0;
    return m;
}

/// Sample cumulants through max_order (<= 8): orders 1..4 via the
/// unbiased k-statistics, orders 5..8 via plug-in central moments fed
/// through the moment recursion (bias O(1/N); exact higher-order
/// polykays are out of scope).
template <class Scalar>
CumulantSetT<Scalar> sample_cumulants(const PowerSumsT<Scalar>& ps, int order_limit = max_order) {
    if (order_limit < 1 || order_limit > max_order)
        throw input_error("In kstat::sample_cumulants: order limit " + std::to_string(order_limit) +
                          " outside 1..8");
    detail::require_min_n<Scalar>(ps.n, order_limit, "sample_cumulants");
    CumulantSetT<Scalar> c;
    c.provenance = Provenance::sample_plugin;
    for (int order = 1; order <= std::min(order_limit, 4); ++order) c.kappa(order) = k_stat(ps, order);
    if (order_limit >= 5) {
        const CumulantSetT<Scalar> plug = moments_to_cumulants(central_moments(ps));
        for (int order = 5; order <= order_limit; ++order) c.kappa(order) = plug.kappa(order);
    }
    return c;
}

/// var(k2) = kappa4/N + 2 kappa2^2/(N-1).
template <class Scalar>
Scalar var_k2(const CumulantSetT<Scalar>& c, std::int64_t n) {
    detail::require_min_n<Scalar>(n, 2, "var_k2");
    const auto nn = static_cast<Scalar>(n);
    return c.kappa(4) / nn + 2 * c.kappa(2) * c.kappa(2) / (nn - 1);
}

/// var(k3) = kappa6/N + 9N(kappa2 kappa4 + kappa3^2)/N_(1) + 6N^2 kappa2^3/N_(2).
template <class Scalar>
Scalar var_k3(const CumulantSetT<Scalar>& c, std::int64_t n) {
    detail::require_min_n<Scalar>(n, 3, "var_k3");
    const auto nn = static_cast<Scalar>(n);
    const Scalar k2 = c.kappa(2), k3 = c.kappa(3), k4 = c.kappa(4), k6 = c.kappa(6);
    return k6 / nn + 9 * nn * (k2 * k4 + k3 * k3) / falling_factorial(nn, 1) +
           6 * nn * nn * k2 * k2 * k2 / falling_factorial(nn, 2);
}

/// var(k4) = kappa8/N + 2N(8 kappa6 kappa2 + 24 kappa5 kappa3 + 17 kappa4^2)/N_(1)
///           + 72N^2(kappa4 kappa2^2 + 2 kappa3^2 kappa2)/N_(2)
///           + 24N^2(N+1) kappa2^4/N_(3).
template <class Scalar>
Scalar var_k4(const CumulantSetT<Scalar>& c, std::int64_t n) {
    detail::require_min_n<Scalar>(n, 4, "var_k4");
    const auto nn = static_cast<Scalar>(n);
    const Scalar k2 = c.kappa(2), k3 = c.kappa(3), k4 = c.kappa(4), k5 = c.kappa(5), k6 = c.kappa(6),
                 k8 = c.kappa(8);
    const Scalar k2_2 = k2 * k2;
    return k8 / nn + 2 * nn * (8 * k6 * k2 + 24 * k5 * k3 + 17 * k4 * k4) / falling_factorial(nn, 1) +
           72 * nn * nn * (k4 * k2_2 + 2 * k3 * k3 * k2) / falling_factorial(nn, 2) +
           24 * nn * nn * (nn + 1) * k2_2 * k2_2 / falling_factorial(nn, 3);
}

/// Large-N limit of var(k4): the 1/N coefficient with all falling
/// factorials replaced by powers of N.
template <class Scalar>
Scalar var_k4_leading(const CumulantSetT<Scalar>& c, std::int64_t n) {
    detail::require_min_n<Scalar>(n, 4, "var_k4_leading");
    const Scalar k2 = c.kappa(2), k3 = c.kappa(3), k4 = c.kappa(4), k5 = c.kappa(5), k6 = c.kappa(6),
                 k8 = c.kappa(8);
    const Scalar k2_2 = k2 * k2;
    return (k8 + 16 * k6 * k2 + 48 * k5 * k3 + 34 * k4 * k4 + 72 * k4 * k2_2 + 144 * k3 * k3 * k2 +
            24 * k2_2 * k2_2) /
           static_cast<Scalar>(n);
}

enum class VarianceMethod { analytic_model, plugin, none };

/// A cumulant estimate with (optionally) its sampling variance.
struct Estimate {
    double value = 0.0;
    std::optional<double> variance;
    std::int64_t n = 0;
    int order = 0;
    VarianceMethod variance_method = VarianceMethod::none;
    /// Set when the plug-in variance came out negative (small-N
    /// fluctuation of the estimated cumulants); variance is then absent
    /// and callers should fall back to a model-based variance.
    bool degenerate_variance = false;
};

/// k3 or k4 with a plug-in error bar estimated from the sample itself
/// (higher-order sample cumulants substituted into the variance formula).
template <class Derived>
Estimate estimate_with_error(const Eigen::ArrayBase<Derived>& sample, int order) {
    if (order != 3 && order != 4)
        throw input_error("In kstat::estimate_with_error: order must be 3 or 4, got " + std::to_string(order));
    const auto ps = accumulate(sample.derived());
    detail::require_min_n<double>(ps.n, max_order, "estimate_with_error");
    if (!(k_stat(ps, 2) > 0))
        throw degenerate_error("In kstat::estimate_with_error: sample has no dispersion");
    const auto cums = sample_cumulants(ps, max_order);
    Estimate est;
    est.value = k_stat(ps, order);
    est.n = ps.n;
    est.order = order;
    const double v = order == 3 ? var_k3(cums, ps.n) : var_k4(cums, ps.n);
    if (v >= 0) {
        est.variance = v;
        est.variance_method = VarianceMethod::plugin;
    } else {
        est.variance_method = VarianceMethod::none;
        est.degenerate_variance = true;
    }
    return est;
}

}  // namespace kstat

/*
 * include/kstat/moments.hpp
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
#include <string>

#include <Eigen/Core>

#include "kstat/common.hpp"
#include "kstat/errors.hpp"

namespace kstat {

/// Moments mu_1..mu_8 of a distribution, raw or central.
template <class Scalar>
struct MomentSetT {
    OrderArray<Scalar> mu = OrderArray<Scalar>::Zero();
    bool central = false;

    Scalar moment(int k) const { return mu[k - 1]; }
    Scalar& moment(int k) { return mu[k - 1]; }
};

/// Where a cumulant set came from: closed-form model values, or
/// sample estimates (unbiased through order 4, plug-in above).
enum class Provenance { model_exact, sample_plugin };

/// Cumulants kappa_1..kappa_8.
template <class Scalar>
struct CumulantSetT {
    OrderArray<Scalar> k = OrderArray<Scalar>::Zero();
    Provenance provenance = Provenance::model_exact;

    Scalar kappa(int n) const { return k[n - 1]; }
    Scalar& kappa(int n) { return k[n - 1]; }
};

using MomentSet = MomentSetT<double>;
using CumulantSet = CumulantSetT<double>;

namespace detail {

template <class Scalar>
void require_finite(const OrderArray<Scalar>& a, const char* where) {
    for (int i = 0; i < max_order; ++i)
        if (!std::isfinite(static_cast<double>(a[i])))
            throw input_error(std::string("In ") + where + ": non-finite entry at order " + std::to_string(i + 1));
}

}  // namespace detail

/// kappa_n = mu_n - sum_{k=1}^{n-1} C(n-1, k-1) mu_{n-k} kappa_k.
/// Accepts central moments too: those are the raw moments of the centered
/// variable, and cumulants of order >= 2 are shift-invariant.
template <class Scalar>
CumulantSetT<Scalar> moments_to_cumulants(const MomentSetT<Scalar>& m) {
    detail::require_finite(m.mu, "kstat::moments_to_cumulants");
    CumulantSetT<Scalar> c;
    c.provenance = Provenance::sample_plugin;
    for (int n = 1; n <= max_order; ++n) {
        Scalar acc = m.moment(n);
        for (int k = 1; k < n; ++k)
            acc -= static_cast<Scalar>(binomial(n - 1, k - 1)) * m.moment(n - k) * c.kappa(k);
        c.kappa(n) = acc;
    }
    return c;
}

/// Inverse recursion: mu_n = kappa_n + sum_{k=1}^{n-1} C(n-1, k-1) mu_{n-k} kappa_k.
/// Returns raw moments.
template <class Scalar>
MomentSetT<Scalar> cumulants_to_moments(const CumulantSetT<Scalar>& c) {
    detail::require_finite(c.k, "kstat::cumulants_to_moments");
    MomentSetT<Scalar> m;
    m.central = false;
    for (int n = 1; n <= max_order; ++n) {
        Scalar acc = c.kappa(n);
        for (int k = 1; k < n; ++k)
            acc += static_cast<Scalar>(binomial(n - 1, k - 1)) * m.moment(n - k) * c.kappa(k);
        m.moment(n) = acc;
    }
    return m;
}

/// Cumulants of a sum of independent variables: componentwise addition.
template <class Scalar>
CumulantSetT<Scalar> convolve(const CumulantSetT<Scalar>& a, const CumulantSetT<Scalar>& b) {
    CumulantSetT<Scalar> out;
    out.k = a.k + b.k;
    out.provenance = (a.provenance == Provenance::model_exact && b.provenance == Provenance::model_exact)
                         ? Provenance::model_exact
                         : Provenance::sample_plugin;
    return out;
}

}  // namespace kstat

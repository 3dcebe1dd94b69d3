/*
 * include/kstat/models.hpp
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
#include <variant>

#include "kstat/common.hpp"
#include "kstat/moments.hpp"

namespace kstat {

/// Plain Gaussian with arbitrary mean and variance.
struct Gaussian {
    double mean = 0.0;
    double var = 1.0;
};

/// Equal-weight mixture of two Gaussians displaced to +-alpha_m, each of
/// width sigma_m. Symmetric, with
///   kappa2 = alpha_m^2 + sigma_m^2,  kappa4 = -2 alpha_m^4,
///   kappa6 = 16 alpha_m^6,           kappa8 = -272 alpha_m^8.
struct DisplacedMixture {
    double alpha_m = 1.0;
    double sigma_m = 0.0;
};

/// Quadrature marginal of the mixed state (1-p)|0><0| + p|1><1| with
/// ground-state width sigma0:
///   P_p(x) = exp(-x^2/(2 sigma0^2)) (p x^2/sigma0^2 + 1 - p) / (sqrt(2 pi) sigma0)
/// Symmetric, with
///   kappa2 = (2p+1) sigma0^2,    kappa4 = -12 p^2 sigma0^4,
///   kappa6 = 240 p^3 sigma0^6,   kappa8 = -10080 p^4 sigma0^8.
/// p > 0.5 implies a negative Wigner function.
struct FockMixture {
    double p = 1.0;
    double sigma0 = 1.0;
};

/// An analytic distribution model plus additive zero-mean Gaussian
/// readout noise of variance readout_var. The noise only ever shifts
/// kappa2; all higher cumulants are untouched.
struct DistModel {
    std::variant<Gaussian, DisplacedMixture, FockMixture> component;
    double readout_var = 0.0;
};

/// Throws input_error on out-of-range parameters.
void validate(const DistModel& m);

/// Exact cumulants kappa_1..kappa_8 of the model, readout noise included.
CumulantSet exact_cumulants(const DistModel& m);

/// Normalized density at x. Only the noiseless analytic forms are
/// supported (a noisy non-Gaussian variant would need an explicit
/// convolution); the Gaussian variant absorbs readout noise into its
/// variance.
double pdf(const DistModel& m, double x);

/// n i.i.d. draws, deterministic for a fixed seed. Readout noise is
/// added per draw.
Sample draw(const DistModel& m, std::int64_t n, std::uint64_t seed);

/// var(k4) for the displaced two-Gaussian mixture in the commonly quoted
/// closed form
///   136 N a^8/N_(1) - 144 N^2 a^4 (a^2+s^2)^2/N_(2) + 24 N^2(N+1) (a^2+s^2)^4/N_(3)
/// with a = alpha_m, s = sigma_m. Exposed for comparison only: it drops
/// the kappa8/N and 16 kappa6 kappa2 N/N_(1) contributions of the general
/// formula (see the audit report / `kstat audit`), and can even go
/// negative. Use var_k4(exact_cumulants(...)) for real work.
double var_k4_mixture_closed_form(double alpha_m, double sigma_m, std::int64_t n);

/// True iff p > 0.5, the threshold at which the n=0/n=1 mixture's Wigner
/// function turns negative.
bool wigner_flag(double p);

}  // namespace kstat

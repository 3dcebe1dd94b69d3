/*
 * src/models.cpp
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

#include "kstat/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include "kstat/errors.hpp"
#include "kstat/random.hpp"

namespace kstat {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

double gaussian_pdf(double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) / std::sqrt(two_pi * var);
}

}  // namespace

void validate(const DistModel& m) {
    if (!(m.readout_var >= 0) || !std::isfinite(m.readout_var))
        throw input_error("In kstat::validate: readout_var must be finite and >= 0");
    std::visit(
        [](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                if (!std::isfinite(c.mean) || !(c.var >= 0) || !std::isfinite(c.var))
                    throw input_error("In kstat::validate: Gaussian needs finite mean and var >= 0");
            } else if constexpr (std::is_same_v<T, DisplacedMixture>) {
                if (!(c.alpha_m >= 0) || !(c.sigma_m >= 0) || !std::isfinite(c.alpha_m) ||
                    !std::isfinite(c.sigma_m))
                    throw input_error("In kstat::validate: DisplacedMixture needs alpha_m, sigma_m >= 0");
            } else {
                if (!(c.p >= 0 && c.p <= 1))
                    throw input_error("In kstat::validate: FockMixture needs p in [0,1]");
                if (!(c.sigma0 > 0) || !std::isfinite(c.sigma0))
                    throw input_error("In kstat::validate: FockMixture needs sigma0 > 0");
            }
        },
        m.component);
}

CumulantSet exact_cumulants(const DistModel& m) {
    validate(m);
    CumulantSet c;
    c.provenance = Provenance::model_exact;
    std::visit(
        [&c](const auto& comp) {
            using T = std::decay_t<decltype(comp)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                c.kappa(1) = comp.mean;
                c.kappa(2) = comp.var;
            } else if constexpr (std::is_same_v<T, DisplacedMixture>) {
                const double a = comp.alpha_m;
                c.kappa(2) = a * a + comp.sigma_m * comp.sigma_m;
                c.kappa(4) = -2.0 * std::pow(a, 4);
                c.kappa(6) = 16.0 * std::pow(a, 6);
                c.kappa(8) = -272.0 * std::pow(a, 8);
            } else {
                const double s = comp.sigma0;
                const double p = comp.p;
                c.kappa(2) = (2.0 * p + 1.0) * s * s;
                c.kappa(4) = -12.0 * p * p * std::pow(s, 4);
                c.kappa(6) = 240.0 * p * p * p * std::pow(s, 6);
                c.kappa(8) = -10080.0 * std::pow(p, 4) * std::pow(s, 8);
            }
        },
        m.component);
    c.kappa(2) += m.readout_var;
    return c;
}

double pdf(const DistModel& m, double x) {
    validate(m);
    return std::visit(
        [&m, x](const auto& comp) -> double {
            using T = std::decay_t<decltype(comp)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double var = comp.var + m.readout_var;
                if (!(var > 0)) throw input_error("In kstat::pdf: Gaussian with zero total variance");
                return gaussian_pdf(x, comp.mean, var);
            } else if constexpr (std::is_same_v<T, DisplacedMixture>) {
                if (m.readout_var > 0)
                    throw input_error("In kstat::pdf: noisy non-Gaussian density is unsupported "
                                      "(needs an explicit convolution)");
                if (!(comp.sigma_m > 0))
                    throw input_error("In kstat::pdf: DisplacedMixture with sigma_m = 0 has no density");
                const double v = comp.sigma_m * comp.sigma_m;
                return 0.5 * (gaussian_pdf(x, comp.alpha_m, v) + gaussian_pdf(x, -comp.alpha_m, v));
            } else {
                if (m.readout_var > 0)
                    throw input_error("In kstat::pdf: noisy non-Gaussian density is unsupported "
                                      "(needs an explicit convolution)");
                const double s2 = comp.sigma0 * comp.sigma0;
                const double u = x / comp.sigma0;
                return std::exp(-0.5 * u * u) * (comp.p * u * u + 1.0 - comp.p) /
                       std::sqrt(two_pi * s2);
            }
        },
        m.component);
}

Sample draw(const DistModel& m, std::int64_t n, std::uint64_t seed) {
    validate(m);
    if (n < 0) throw input_error("In kstat::draw: negative sample size");
    Sample out(n);
    auto engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::visit(
        [&](const auto& comp) {
            using T = std::decay_t<decltype(comp)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                const double sd = std::sqrt(comp.var);
                for (std::int64_t i = 0; i < n; ++i) out[i] = comp.mean + sd * normal(engine);
            } else if constexpr (std::is_same_v<T, DisplacedMixture>) {
                for (std::int64_t i = 0; i < n; ++i) {
                    const double center = uniform(engine) < 0.5 ? comp.alpha_m : -comp.alpha_m;
                    out[i] = center + comp.sigma_m * normal(engine);
                }
            } else {
                // n=1 component density ~ x^2 exp(-x^2/(2 sigma0^2)): the
                // radius of a 3d standard normal carries a fair sign,
                // i.e. sign * sigma0 * sqrt(chi^2_3). Exact and
                // rejection-free.
                for (std::int64_t i = 0; i < n; ++i) {
                    if (uniform(engine) < comp.p) {
                        const double g1 = normal(engine), g2 = normal(engine), g3 = normal(engine);
                        const double r = std::sqrt(g1 * g1 + g2 * g2 + g3 * g3);
                        out[i] = (uniform(engine) < 0.5 ? -1.0 : 1.0) * comp.sigma0 * r;
                    } else {
                        out[i] = comp.sigma0 * normal(engine);
                    }
                }
            }
        },
        m.component);

    if (m.readout_var > 0) {
        const double noise_sd = std::sqrt(m.readout_var);
        for (std::int64_t i = 0; i < n; ++i) out[i] += noise_sd * normal(engine);
    }
    return out;
}

double var_k4_mixture_closed_form(double alpha_m, double sigma_m, std::int64_t n) {
    if (n < 4)
        throw input_error("In kstat::var_k4_mixture_closed_form: sample size " + std::to_string(n) +
                          " is below the minimum 4");
    const auto nn = static_cast<double>(n);
    const double a2 = alpha_m * alpha_m;
    const double a4 = a2 * a2;
    const double q = a2 + sigma_m * sigma_m;
    const double q2 = q * q;
    return 136.0 * nn * a4 * a4 / falling_factorial(nn, 1) -
           144.0 * nn * nn * a4 * q2 / falling_factorial(nn, 2) +
           24.0 * nn * nn * (nn + 1.0) * q2 * q2 / falling_factorial(nn, 3);
}

bool wigner_flag(double p) {
    if (!(p >= 0 && p <= 1)) throw input_error("In kstat::wigner_flag: p must lie in [0,1]");
    return p > 0.5;
}

}  // namespace kstat

/*
 * include/kstat/budget.hpp
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
#include <vector>

namespace kstat {

/// A fixed probing budget to split between per-measurement precision
/// (n_r readings per metapulse, readout variance c/n_r) and statistics
/// (n_m = floor(total_probes/n_r) measurements), for the n=0/n=1 mixture
/// with excitation p and ground width sigma0.
struct Budget {
    std::int64_t total_probes = 100000;
    double noise_coefficient = 20.0;  ///< c in sigma_R^2 = c/n_r
    double p = 1.0;
    double sigma0 = 1.0;
};

void validate(const Budget& budget);

struct BudgetPoint {
    std::int64_t n_r = 0;
    std::int64_t n_m = 0;
    double sigma_r = 0.0;
    double s_exact = 0.0;    ///< finite-N variance formula
    double s_leading = 0.0;  ///< leading-order-in-1/N variance
};

struct BudgetResult {
    std::vector<BudgetPoint> curve;
    std::int64_t optimal_nr = 0;
    double optimal_s = 0.0;
    /// Where the two asymptotic branches cross: sigma_r_star^8 =
    /// sigma0^8 (1 + 8p - 12p^2 + 48p^3 - 24p^4), n_r = c/sigma_r_star^2.
    /// A heuristic locator, reported alongside the grid optimum; the two
    /// can differ substantially when sigma_r_star ~ sigma0.
    double asymptotic_sigma_r = 0.0;
    double asymptotic_nr = 0.0;
    /// False if the exact curve fails the rise-then-fall shape check.
    bool unimodal = true;
};

/// S = kappa4^2/var(k4) at n_r readings per measurement under the budget.
double snr_at(const Budget& budget, std::int64_t n_r);

/// Exhaustive integer scan of S(n_r); the returned curve covers every
/// feasible n_r.
BudgetResult optimize(const Budget& budget);

/// 1 + 8p - 12p^2 + 48p^3 - 24p^4: the denominator polynomial of the
/// low-noise branch, and the eighth power of the optimal noise-to-width
/// ratio.
double optimum_polynomial(double p);

struct AsymptoticOptimum {
    double sigma_r_star = 0.0;
    double n_r_star = 0.0;
};

/// Crossing of the asymptotic branches: sigma_r_star = sigma0 *
/// polynomial^(1/8), n_r_star = c / sigma_r_star^2. Undefined at p = 0.
AsymptoticOptimum asymptotic_optimum(double p, double sigma0, double c);

struct AsymptoticBranches {
    double s_low = 0.0;   ///< sigma_r << sigma0: 6 N p^4 / polynomial
    double s_high = 0.0;  ///< sigma_r >> sigma0: 6 N p^4 sigma0^8 / sigma_r^8
};

/// Large-N asymptotes of S in the two noise regimes.
AsymptoticBranches asymptotic_branches(double p, double sigma0, double sigma_r, std::int64_t n);

}  // namespace kstat

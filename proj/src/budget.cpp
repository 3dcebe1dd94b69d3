/*
 * src/budget.cpp
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

#include "kstat/budget.hpp"

#include <cmath>
#include <string>

#include "kstat/errors.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/models.hpp"

namespace kstat {

void validate(const Budget& budget) {
    if (budget.total_probes < 1)
        throw input_error("In kstat::validate: budget needs total_probes >= 1");
    if (!(budget.noise_coefficient > 0))
        throw input_error("In kstat::validate: budget needs noise_coefficient > 0");
    if (!(budget.p >= 0 && budget.p <= 1))
        throw input_error("In kstat::validate: budget needs p in [0,1]");
    if (!(budget.sigma0 > 0)) throw input_error("In kstat::validate: budget needs sigma0 > 0");
}

namespace {

DistModel model_at(const Budget& budget, std::int64_t n_r) {
    return DistModel{FockMixture{budget.p, budget.sigma0},
                     budget.noise_coefficient / static_cast<double>(n_r)};
}

std::int64_t measurements_at(const Budget& budget, std::int64_t n_r) { return budget.total_probes / n_r; }

}  // namespace

double snr_at(const Budget& budget, std::int64_t n_r) {
    validate(budget);
    if (n_r < 1 || n_r > budget.total_probes)
        throw input_error("In kstat::snr_at: n_r " + std::to_string(n_r) + " outside [1, total_probes]");
    const std::int64_t n_m = measurements_at(budget, n_r);
    if (n_m < 4)
        throw degenerate_error("In kstat::snr_at: only " + std::to_string(n_m) +
                               " measurements left at n_r = " + std::to_string(n_r) +
                               " (need at least 4)");
    const auto cums = exact_cumulants(model_at(budget, n_r));
    const double kappa4 = cums.kappa(4);
    if (kappa4 == 0.0) return 0.0;
    return kappa4 * kappa4 / var_k4(cums, n_m);
}

BudgetResult optimize(const Budget& budget) {
    validate(budget);
    BudgetResult result;
    const std::int64_t max_nr = budget.total_probes / 4;  // keep n_m >= 4
    if (max_nr < 1) throw degenerate_error("In kstat::optimize: budget too small for any split");

    result.curve.reserve(static_cast<std::size_t>(max_nr));
    for (std::int64_t n_r = 1; n_r <= max_nr; ++n_r) {
        BudgetPoint pt;
        pt.n_r = n_r;
        pt.n_m = measurements_at(budget, n_r);
        pt.sigma_r = std::sqrt(budget.noise_coefficient / static_cast<double>(n_r));
        const auto cums = exact_cumulants(model_at(budget, n_r));
        const double kappa4 = cums.kappa(4);
        if (kappa4 == 0.0) {
            pt.s_exact = 0.0;
            pt.s_leading = 0.0;
        } else {
            pt.s_exact = kappa4 * kappa4 / var_k4(cums, pt.n_m);
            pt.s_leading = kappa4 * kappa4 / var_k4_leading(cums, pt.n_m);
        }
        if (pt.s_exact > result.optimal_s) {
            result.optimal_s = pt.s_exact;
            result.optimal_nr = n_r;
        }
        result.curve.push_back(pt);
    }
    if (result.optimal_nr == 0) result.optimal_nr = 1;  // flat zero curve (p = 0)

    if (budget.p > 0) {
        const auto opt = asymptotic_optimum(budget.p, budget.sigma0, budget.noise_coefficient);
        result.asymptotic_sigma_r = opt.sigma_r_star;
        result.asymptotic_nr = opt.n_r_star;
    }

    // Shape check on the per-n_m envelope: the integer split n_m =
    // floor(total/n_r) creates a sawtooth (S creeps up within a constant
    // n_m plateau, then drops at the step), so the raw sequence is never
    // strictly unimodal. Collapse each plateau to its best point first.
    std::vector<double> envelope;
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
        if (i > 0 && result.curve[i].n_m == result.curve[i - 1].n_m)
            envelope.back() = std::max(envelope.back(), result.curve[i].s_exact);
        else
            envelope.push_back(result.curve[i].s_exact);
    }
    int transitions = 0;
    int direction = 0;
    for (std::size_t i = 1; i < envelope.size(); ++i) {
        const double a = envelope[i - 1];
        const double b = envelope[i];
        const double eps = 1e-9 * std::max(std::abs(a), std::abs(b));
        const int step = b > a + eps ? 1 : (b < a - eps ? -1 : 0);
        if (step == 0) continue;
        if (direction != 0 && step != direction) ++transitions;
        direction = step;
    }
    result.unimodal = transitions <= 1;
    return result;
}

double optimum_polynomial(double p) {
    return 1.0 + 8.0 * p - 12.0 * p * p + 48.0 * p * p * p - 24.0 * p * p * p * p;
}

AsymptoticOptimum asymptotic_optimum(double p, double sigma0, double c) {
    if (!(p > 0 && p <= 1))
        throw input_error("In kstat::asymptotic_optimum: p must lie in (0,1] (no signal at p = 0)");
    if (!(sigma0 > 0) || !(c > 0))
        throw input_error("In kstat::asymptotic_optimum: sigma0 and c must be > 0");
    AsymptoticOptimum out;
    out.sigma_r_star = sigma0 * std::pow(optimum_polynomial(p), 1.0 / 8.0);
    out.n_r_star = c / (out.sigma_r_star * out.sigma_r_star);
    return out;
}

AsymptoticBranches asymptotic_branches(double p, double sigma0, double sigma_r, std::int64_t n) {
    if (!(p > 0 && p <= 1))
        throw input_error("In kstat::asymptotic_branches: p must lie in (0,1]");
    if (!(sigma0 > 0) || !(sigma_r > 0))
        throw input_error("In kstat::asymptotic_branches: sigma0 and sigma_r must be > 0");
    const auto nn = static_cast<double>(n);
    const double p4 = p * p * p * p;
    AsymptoticBranches out;
    out.s_low = 6.0 * nn * p4 / optimum_polynomial(p);
    out.s_high = 6.0 * nn * p4 * std::pow(sigma0 / sigma_r, 8.0);
    return out;
}

}  // namespace kstat

/*
 * src/inference.cpp
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

#include "kstat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "kstat/errors.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/random.hpp"

namespace kstat {

double gaussian_null_sigma(double k2, std::int64_t n) {
    if (n < 4)
        throw input_error("In kstat::gaussian_null_sigma: sample size " + std::to_string(n) +
                          " is below the minimum 4");
    if (!(k2 > 0)) throw degenerate_error("In kstat::gaussian_null_sigma: k2 must be > 0");
    const auto nn = static_cast<double>(n);
    const double k2_2 = k2 * k2;
    return std::sqrt(24.0 * nn * nn * (nn + 1.0) * k2_2 * k2_2 / falling_factorial(nn, 3));
}

TestResult test_non_gaussian(const Sample& sample, const std::optional<DistModel>& alt_model,
                             double threshold_sigma) {
    if (sample.size() < 5)
        throw input_error("In kstat::test_non_gaussian: need at least 5 readings, got " +
                          std::to_string(sample.size()));
    const auto ps = accumulate(sample);
    TestResult result;
    result.n = ps.n;
    result.threshold = threshold_sigma;
    result.k2 = k_stat(ps, 2);
    result.k4 = k_stat(ps, 4);
    result.null_sigma = gaussian_null_sigma(result.k2, ps.n);  // throws degenerate_error on k2 <= 0
    result.z_null = std::abs(result.k4) / result.null_sigma;
    if (alt_model) {
        const double v = var_k4(exact_cumulants(*alt_model), ps.n);
        if (v > 0) {
            result.alt_sigma = std::sqrt(v);
            result.z_alt = std::abs(result.k4) / *result.alt_sigma;
        }
    }
    result.non_gaussian = result.z_null >= threshold_sigma;
    return result;
}

namespace {

double k4_of_indices(const Sample& data, const std::vector<int>& idx) {
    Sample sub(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) sub[static_cast<Eigen::Index>(i)] = data[idx[i]];
    return k_stat(accumulate(sub), 4);
}

}  // namespace

BootstrapResult bootstrap_snr(const Sample& dataset, const BootstrapOptions& options) {
    const auto size = static_cast<int>(dataset.size());
    if (options.subsample < 5)
        throw input_error("In kstat::bootstrap_snr: subsample size must be >= 5");
    if (options.subsample > size)
        throw input_error("In kstat::bootstrap_snr: subsample size " + std::to_string(options.subsample) +
                          " exceeds dataset size " + std::to_string(size));

    BootstrapResult result;
    result.subsample_size = options.subsample;

    if (options.disjoint) {
        // Sensitivity-analysis mode: one shuffle, disjoint consecutive blocks.
        std::vector<int> perm(static_cast<std::size_t>(size));
        std::iota(perm.begin(), perm.end(), 0);
        auto engine = make_engine(options.seed);
        std::shuffle(perm.begin(), perm.end(), engine);
        const int blocks = size / options.subsample;
        if (blocks < 2)
            throw input_error("In kstat::bootstrap_snr: disjoint mode needs at least 2 blocks");
        result.realizations = blocks;
        for (int b = 0; b < blocks; ++b) {
            const std::vector<int> idx(perm.begin() + b * options.subsample,
                                       perm.begin() + (b + 1) * options.subsample);
            result.k4_values.push_back(k4_of_indices(dataset, idx));
        }
    } else {
        if (options.realizations < 2)
            throw input_error("In kstat::bootstrap_snr: need at least 2 realizations");
        result.realizations = options.realizations;
        std::vector<int> pool(static_cast<std::size_t>(size));
        for (int r = 0; r < options.realizations; ++r) {
            // Partial Fisher-Yates: `subsample` distinct indices, uniform
            // without replacement. Realizations use derived seeds so they
            // are independent of evaluation order.
            auto engine = make_engine(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
            std::iota(pool.begin(), pool.end(), 0);
            std::vector<int> idx(static_cast<std::size_t>(options.subsample));
            for (int j = 0; j < options.subsample; ++j) {
                std::uniform_int_distribution<int> pick(j, size - 1);
                std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick(engine))]);
                idx[static_cast<std::size_t>(j)] = pool[static_cast<std::size_t>(j)];
            }
            result.k4_values.push_back(k4_of_indices(dataset, idx));
        }
    }

    const auto r = static_cast<double>(result.k4_values.size());
    double mean = 0.0;
    for (const double v : result.k4_values) mean += v;
    mean /= r;
    double var = 0.0;
    for (const double v : result.k4_values) var += (v - mean) * (v - mean);
    var /= r - 1.0;
    if (!(var > 0))
        throw degenerate_error("In kstat::bootstrap_snr: k4 has zero variance across realizations");
    result.mean_k4 = mean;
    result.var_k4 = var;
    result.s_n = mean * mean / var;
    return result;
}

double theoretical_snr(const DistModel& model, std::int64_t n) {
    const auto cums = exact_cumulants(model);
    const double kappa4 = cums.kappa(4);
    if (kappa4 == 0.0) return 0.0;
    return kappa4 * kappa4 / var_k4(cums, n);
}

}  // namespace kstat

/*
 * include/kstat/inference.hpp
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
#include <vector>

#include "kstat/common.hpp"
#include "kstat/models.hpp"

namespace kstat {

/// Outcome of the k4-based non-Gaussianity test.
///
/// The verdict always uses the Gaussian-null sigma (the conservative
/// hypothesis-testing choice); when an alternative model is supplied its
/// sigma and z are reported alongside for comparison.
struct TestResult {
    double k4 = 0.0;
    double k2 = 0.0;
    double null_sigma = 0.0;                ///< sqrt(var(k4)) under the Gaussian null with kappa2 = sample k2
    std::optional<double> alt_sigma;        ///< sqrt(var(k4)) under the supplied model
    double z_null = 0.0;                    ///< |k4| / null_sigma
    std::optional<double> z_alt;
    double threshold = 3.0;                 ///< verdict threshold, in sigmas
    bool non_gaussian = false;              ///< z_null >= threshold
    std::int64_t n = 0;
};

/// sqrt(24 N^2 (N+1) k2^4 / N_(3)): the k4 standard deviation of a
/// Gaussian with variance k2.
double gaussian_null_sigma(double k2, std::int64_t n);

/// Test a sample for non-Gaussianity via k4.
TestResult test_non_gaussian(const Sample& sample, const std::optional<DistModel>& alt_model,
                             double threshold_sigma);

struct BootstrapOptions {
    int realizations = 33;
    int subsample = 20;
    std::uint64_t seed = 0;
    /// Use disjoint blocks of one seeded shuffle instead of independent
    /// resampling; the realization count is then floor(size/subsample).
    bool disjoint = false;
};

/// Bootstrap estimate of the signal-to-noise ratio S = kappa4^2/var(k4):
/// realizations of `subsample` points are drawn without replacement
/// (independently re-drawn per realization), and
/// s_n = mean(k4)^2 / var(k4) across them.
struct BootstrapResult {
    int realizations = 0;
    int subsample_size = 0;
    std::vector<double> k4_values;
    double mean_k4 = 0.0;
    double var_k4 = 0.0;
    double s_n = 0.0;
};

BootstrapResult bootstrap_snr(const Sample& dataset, const BootstrapOptions& options);

/// S = kappa4^2 / var(k4) for an analytic model at sample size n.
double theoretical_snr(const DistModel& model, std::int64_t n);

}  // namespace kstat

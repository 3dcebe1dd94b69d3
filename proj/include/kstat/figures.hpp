/*
 * include/kstat/figures.hpp
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
#include <string>
#include <vector>

#include "kstat/budget.hpp"
#include "kstat/qnd.hpp"

namespace kstat {

// Dataset builders behind `kstat reproduce`. Each figure is emitted as a
// CSV data file; plotting is left to the consumer.

/// fig1: k4 trajectories versus sample size for the unit-variance-scaled
/// n=0/n=1 mixtures, with the +-sqrt(var(k4)) band around kappa4.
struct Fig1Row {
    double p = 0.0;
    int realization = 0;
    std::int64_t n = 0;
    double k4 = 0.0;
    double kappa4 = 0.0;
    double band = 0.0;  ///< sqrt(var(k4)) from the model cumulants
};
std::vector<Fig1Row> fig1_dataset(std::uint64_t seed);
void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows,
                    const std::vector<std::string>& meta);

/// fig3: simulated-experiment k4 versus displacement for several n_r,
/// with residuals normalized by the predicted sqrt(var(k4)). Values are
/// reported raw and normalized to (n_r sigma_a)^4.
struct Fig3Row {
    int n_r = 0;
    double alpha_prime = 0.0;  ///< alpha_m / (n_r sigma_a)
    double alpha_spins = 0.0;
    double alpha_m = 0.0;
    double sigma_m = 0.0;
    std::int64_t n = 0;
    double k4 = 0.0;
    double kappa4 = 0.0;
    double k4_norm = 0.0;
    double kappa4_norm = 0.0;
    double residual = 0.0;  ///< (kappa4 - k4)/sqrt(var(k4))
};
std::vector<Fig3Row> fig3_dataset(const MeasurementConfig& cfg, std::uint64_t seed);
void write_fig3_csv(const std::string& path, const std::vector<Fig3Row>& rows,
                    const std::vector<std::string>& meta);

/// fig4: bootstrap signal-to-noise versus readout noise against theory.
struct Fig4Row {
    double alpha_prime = 0.0;
    int n_r = 0;
    double sigma_r2 = 0.0;       ///< readout variance of the metapulse
    double sigma_r_norm = 0.0;   ///< sigma_r / (n_r sigma_a)
    double s_bootstrap = 0.0;    ///< S_N from (R=33, N=20) realizations
    double s_theory = 0.0;       ///< kappa4^2/var(k4) at N=20
};
std::vector<Fig4Row> fig4_dataset(const MeasurementConfig& cfg, std::uint64_t seed);
void write_fig4_csv(const std::string& path, const std::vector<Fig4Row>& rows,
                    const std::vector<std::string>& meta);

/// fig5: S versus n_r under a fixed probe budget, p = 1 and p = 0.5.
struct Fig5Row {
    double p = 0.0;
    std::int64_t n_r = 0;
    std::int64_t n_m = 0;
    double sigma_r = 0.0;
    double s_exact = 0.0;
    double s_leading = 0.0;
};
std::vector<Fig5Row> fig5_dataset(const Budget& base);
void write_fig5_csv(const std::string& path, const std::vector<Fig5Row>& rows,
                    const std::vector<std::string>& meta);

/// Audit of the closed-form displaced-mixture var(k4) against the general
/// formula: the two differ by exactly kappa8/N + 16 kappa6 kappa2 N/N_(1).
struct AuditRow {
    double alpha_m = 0.0;
    double sigma_m = 0.0;
    std::int64_t n = 0;
    double var_general = 0.0;
    double var_closed_form = 0.0;
    double difference = 0.0;            ///< general - closed form
    double predicted_difference = 0.0;  ///< kappa8/N + 16 kappa6 kappa2 N/N_(1)
    double rel_residual = 0.0;          ///< |difference - predicted| / |var_general|
};
std::vector<AuditRow> audit_dataset();
std::vector<AuditRow> audit_dataset(const std::vector<double>& alpha_ms,
                                    const std::vector<double>& sigma_ms,
                                    const std::vector<std::int64_t>& ns);
void write_audit_csv(const std::string& path, const std::vector<AuditRow>& rows,
                     const std::vector<std::string>& meta);

}  // namespace kstat

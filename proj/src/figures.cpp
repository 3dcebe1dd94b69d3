/*
 * src/figures.cpp
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

#include "kstat/figures.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "kstat/errors.hpp"
#include "kstat/inference.hpp"
#include "kstat/io.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/models.hpp"
#include "kstat/random.hpp"

namespace kstat {

namespace {

const std::vector<std::int64_t> fig1_sizes = {10, 16, 25, 40, 63, 100, 158, 251, 398, 631, 1000};
constexpr int fig1_realizations = 10;

/// Simulated NG metapulse sample of exactly n_meta values at the given
/// displacement, together with the matching analytic model.
struct MetapulseExperiment {
    Sample metapulses;
    DisplacedMixture model;
};

MetapulseExperiment simulate_metapulse_experiment(MeasurementConfig cfg, int n_r, double alpha_spins,
                                                  int n_meta, std::uint64_t seed) {
    cfg.n_r = n_r;
    const int windows_per_record = cfg.pulses / n_r;
    if (windows_per_record < 1)
        throw input_error("In kstat::simulate_metapulse_experiment: n_r exceeds pulses per preparation");
    const int per_pool = (n_meta + windows_per_record - 1) / windows_per_record;
    const auto plus = simulate_preparations(cfg, alpha_spins, per_pool, derive_seed(seed, 1), "DM[+]");
    const auto minus = simulate_preparations(cfg, -alpha_spins, per_pool, derive_seed(seed, 2), "DM[-]");
    Sample all = build_ng_dataset(plus, minus, n_r, derive_seed(seed, 3));
    if (all.size() < n_meta)
        throw degenerate_error("In kstat::simulate_metapulse_experiment: pools exhausted early");
    MetapulseExperiment out;
    out.metapulses = all.head(n_meta);
    out.model.alpha_m = static_cast<double>(n_r) * cfg.g * alpha_spins;
    out.model.sigma_m = std::sqrt(metapulse_variance(cfg));
    return out;
}

}  // namespace

std::vector<Fig1Row> fig1_dataset(std::uint64_t seed) {
    std::vector<Fig1Row> rows;
    const std::vector<double> ps = {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0};
    const std::int64_t n_max = fig1_sizes.back();
    std::uint64_t stream = 0;
    for (const double p : ps) {
        // Unit-variance scaling: kappa2 of the mixture is (2p+1) sigma0^2.
        const double scale = 1.0 / std::sqrt(2.0 * p + 1.0);
        const DistModel model{FockMixture{p, scale}, 0.0};
        const auto cums = exact_cumulants(model);
        for (int realization = 0; realization < fig1_realizations; ++realization) {
            const Sample x = draw(model, n_max, derive_seed(seed, stream++));
            for (const std::int64_t n : fig1_sizes) {
                Fig1Row row;
                row.p = p;
                row.realization = realization;
                row.n = n;
                row.k4 = k_stat(accumulate(x.head(n)), 4);
                row.kappa4 = cums.kappa(4);
                row.band = std::sqrt(var_k4(cums, n));
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_fig1_csv(const std::string& path, const std::vector<Fig1Row>& rows,
                    const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        os << "p,realization,n,k4,kappa4,band\n";
        for (const auto& r : rows)
            os << format_full(r.p) << ',' << r.realization << ',' << r.n << ',' << format_full(r.k4)
               << ',' << format_full(r.kappa4) << ',' << format_full(r.band) << '\n';
    });
}

std::vector<Fig3Row> fig3_dataset(const MeasurementConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    std::vector<Fig3Row> rows;
    const std::vector<int> n_rs = {1, 4, 16};
    const std::vector<double> alpha_primes = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    const int n_meta = 100;
    const double sigma_a = std::sqrt(cfg.sigma_a2);
    std::uint64_t stream = 0;
    for (const int n_r : n_rs) {
        for (const double alpha_prime : alpha_primes) {
            // alpha' = alpha_m/(n_r sigma_a) and alpha_m = n_r g alpha
            // leave the spin displacement independent of n_r.
            const double alpha_spins = alpha_prime * sigma_a / cfg.g;
            const auto exp_data =
                simulate_metapulse_experiment(cfg, n_r, alpha_spins, n_meta, derive_seed(seed, stream++));
            const DistModel model{exp_data.model, 0.0};
            const auto cums = exact_cumulants(model);
            const double norm = std::pow(static_cast<double>(n_r) * sigma_a, 4.0);

            Fig3Row row;
            row.n_r = n_r;
            row.alpha_prime = alpha_prime;
            row.alpha_spins = alpha_spins;
            row.alpha_m = exp_data.model.alpha_m;
            row.sigma_m = exp_data.model.sigma_m;
            row.n = n_meta;
            row.k4 = k_stat(accumulate(exp_data.metapulses), 4);
            row.kappa4 = cums.kappa(4);
            row.k4_norm = row.k4 / norm;
            row.kappa4_norm = row.kappa4 / norm;
            row.residual = (row.kappa4 - row.k4) / std::sqrt(var_k4(cums, n_meta));
            rows.push_back(row);
        }
    }
    return rows;
}

void write_fig3_csv(const std::string& path, const std::vector<Fig3Row>& rows,
                    const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        os << "n_r,alpha_prime,alpha_spins,alpha_m,sigma_m,n,k4,kappa4,k4_norm,kappa4_norm,residual\n";
        for (const auto& r : rows)
            os << r.n_r << ',' << format_full(r.alpha_prime) << ',' << format_full(r.alpha_spins) << ','
               << format_full(r.alpha_m) << ',' << format_full(r.sigma_m) << ',' << r.n << ','
               << format_full(r.k4) << ',' << format_full(r.kappa4) << ',' << format_full(r.k4_norm)
               << ',' << format_full(r.kappa4_norm) << ',' << format_full(r.residual) << '\n';
    });
}

std::vector<Fig4Row> fig4_dataset(const MeasurementConfig& cfg, std::uint64_t seed) {
    validate(cfg);
    std::vector<Fig4Row> rows;
    const std::vector<double> alpha_primes = {2.0, 3.0, 4.0};
    // readout noise spans two orders of magnitude across the sweep
    const std::vector<int> n_rs = {1, 2, 4, 8, 16, 32, 64, 100};
    const int n_meta = 100;
    const double sigma_a = std::sqrt(cfg.sigma_a2);
    std::uint64_t stream = 0;
    for (const double alpha_prime : alpha_primes) {
        for (const int n_r : n_rs) {
            const double alpha_spins = alpha_prime * sigma_a / cfg.g;
            const auto exp_data =
                simulate_metapulse_experiment(cfg, n_r, alpha_spins, n_meta, derive_seed(seed, stream++));
            BootstrapOptions opts;
            opts.realizations = 33;
            opts.subsample = 20;
            opts.seed = derive_seed(seed, stream++);
            const auto boot = bootstrap_snr(exp_data.metapulses, opts);

            MeasurementConfig at_nr = cfg;
            at_nr.n_r = n_r;
            Fig4Row row;
            row.alpha_prime = alpha_prime;
            row.n_r = n_r;
            row.sigma_r2 = at_nr.readout_var();
            row.sigma_r_norm = std::sqrt(row.sigma_r2) / (static_cast<double>(n_r) * sigma_a);
            row.s_bootstrap = boot.s_n;
            row.s_theory = theoretical_snr(DistModel{exp_data.model, 0.0}, opts.subsample);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_fig4_csv(const std::string& path, const std::vector<Fig4Row>& rows,
                    const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        os << "alpha_prime,n_r,sigma_r2,sigma_r_norm,s_bootstrap,s_theory\n";
        for (const auto& r : rows)
            os << format_full(r.alpha_prime) << ',' << r.n_r << ',' << format_full(r.sigma_r2) << ','
               << format_full(r.sigma_r_norm) << ',' << format_full(r.s_bootstrap) << ','
               << format_full(r.s_theory) << '\n';
    });
}

std::vector<Fig5Row> fig5_dataset(const Budget& base) {
    std::vector<Fig5Row> rows;
    for (const double p : {1.0, 0.5}) {
        Budget budget = base;
        budget.p = p;
        const auto result = optimize(budget);
        const std::int64_t cap = std::max<std::int64_t>(1000, 2 * result.optimal_nr);
        for (const auto& pt : result.curve) {
            if (pt.n_r > cap) break;
            rows.push_back({p, pt.n_r, pt.n_m, pt.sigma_r, pt.s_exact, pt.s_leading});
        }
    }
    return rows;
}

void write_fig5_csv(const std::string& path, const std::vector<Fig5Row>& rows,
                    const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        os << "p,n_r,n_m,sigma_r,s_exact,s_leading\n";
        for (const auto& r : rows)
            os << format_full(r.p) << ',' << r.n_r << ',' << r.n_m << ',' << format_full(r.sigma_r)
               << ',' << format_full(r.s_exact) << ',' << format_full(r.s_leading) << '\n';
    });
}

std::vector<AuditRow> audit_dataset() {
    return audit_dataset({0.5, 1.0, 2.0}, {0.0, 0.5, 1.0, 2.0}, {20, 100, 1000});
}

std::vector<AuditRow> audit_dataset(const std::vector<double>& alpha_ms,
                                    const std::vector<double>& sigma_ms,
                                    const std::vector<std::int64_t>& ns) {
    std::vector<AuditRow> rows;
    for (const double alpha_m : alpha_ms) {
        for (const double sigma_m : sigma_ms) {
            for (const std::int64_t n : ns) {
                const auto cums = exact_cumulants(DistModel{DisplacedMixture{alpha_m, sigma_m}, 0.0});
                AuditRow row;
                row.alpha_m = alpha_m;
                row.sigma_m = sigma_m;
                row.n = n;
                row.var_general = var_k4(cums, n);
                row.var_closed_form = var_k4_mixture_closed_form(alpha_m, sigma_m, n);
                row.difference = row.var_general - row.var_closed_form;
                const auto nn = static_cast<double>(n);
                row.predicted_difference =
                    cums.kappa(8) / nn + 16.0 * cums.kappa(6) * cums.kappa(2) * nn / falling_factorial(nn, 1);
                row.rel_residual =
                    std::abs(row.difference - row.predicted_difference) / std::abs(row.var_general);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_audit_csv(const std::string& path, const std::vector<AuditRow>& rows,
                     const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        os << "alpha_m,sigma_m,n,var_general,var_closed_form,difference,predicted_difference,"
              "rel_residual\n";
        for (const auto& r : rows)
            os << format_full(r.alpha_m) << ',' << format_full(r.sigma_m) << ',' << r.n << ','
               << format_full(r.var_general) << ',' << format_full(r.var_closed_form) << ','
               << format_full(r.difference) << ',' << format_full(r.predicted_difference) << ','
               << format_full(r.rel_residual) << '\n';
    });
}

}  // namespace kstat

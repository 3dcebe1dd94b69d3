/*
 * tests/test_figures.cpp
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "kstat/figures.hpp"
#include "kstat/qnd.hpp"
#include "test_helpers.hpp"

using namespace kstat;
using namespace kstat_test;

TEST_CASE("fig1: deterministic, banded, and covering") {
    const auto rows = fig1_dataset(11);
    const auto rows_again = fig1_dataset(11);
    REQUIRE(rows.size() == rows_again.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].k4 == rows_again[i].k4);

    // p = 0 trajectories: kappa4 = 0 and the +-band covers ~68% of points
    int inside = 0, total = 0;
    for (const auto& row : rows) {
        CHECK(row.band > 0.0);
        if (row.p != 0.0) continue;
        CHECK(row.kappa4 == 0.0);
        if (row.n < 50) continue;
        ++total;
        if (std::abs(row.k4 - row.kappa4) <= row.band) ++inside;
    }
    REQUIRE(total >= 60);
    CHECK(static_cast<double>(inside) / total >= 0.60);

    // four p values, ten realizations each
    std::vector<double> ps;
    for (const auto& row : rows)
        if (std::find(ps.begin(), ps.end(), row.p) == ps.end()) ps.push_back(row.p);
    CHECK(ps.size() == 4);
}

TEST_CASE("fig3: residuals are standardized") {
    const auto rows = fig3_dataset(default_config(), 17);
    REQUIRE(rows.size() == 18);  // 3 n_r values x 6 displacements
    std::vector<double> residuals;
    for (const auto& row : rows) {
        CHECK(row.n == 100);
        CHECK(row.kappa4 == doctest::Approx(-2.0 * std::pow(row.alpha_m, 4)).epsilon(1e-12));
        // normalization: kappa4_norm = kappa4 / (n_r sigma_a)^4 = -2 alpha_prime^4
        CHECK(row.kappa4_norm == doctest::Approx(-2.0 * std::pow(row.alpha_prime, 4)).epsilon(1e-9));
        residuals.push_back(row.residual);
    }
    const auto stats = mean_and_error(residuals);
    CHECK(std::abs(stats.mean) < 0.5);
    CHECK(stats.sd > 0.4);
    CHECK(stats.sd < 1.8);
}

TEST_CASE("fig4: bootstrap tracks theory across the readout-noise sweep") {
    const auto rows = fig4_dataset(default_config(), 23);
    REQUIRE(rows.size() == 24);  // 3 alpha' x 8 n_r
    int resolvable = 0, within_factor3 = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        CHECK(row.s_theory > 0.0);
        CHECK(row.s_bootstrap > 0.0);
        // stronger readout noise (smaller n_r) can only lose sensitivity
        if (i % 8 != 0) CHECK(row.s_theory >= rows[i - 1].s_theory);
        // where the signal is resolvable, the paper-scale bootstrap lands
        // within its own scatter of theory
        if (row.s_theory > 1.0) {
            ++resolvable;
            if (row.s_bootstrap < 3.0 * row.s_theory && row.s_bootstrap > row.s_theory / 3.0)
                ++within_factor3;
        }
    }
    CHECK(resolvable >= 7);
    CHECK(within_factor3 >= (2 * resolvable) / 3);
    // readout noise falls with n_r at fixed alpha': sigma_r_norm strictly decreasing
    for (std::size_t i = 1; i < 8; ++i) CHECK(rows[i].sigma_r_norm < rows[i - 1].sigma_r_norm);
}

TEST_CASE("fig5: curve peaks at the grid optimum for both p values") {
    Budget budget;
    const auto rows = fig5_dataset(budget);
    double best_p1 = 0.0, best_p05 = 0.0;
    std::int64_t argmax_p1 = 0, argmax_p05 = 0;
    for (const auto& row : rows) {
        if (row.p == 1.0 && row.s_exact > best_p1) {
            best_p1 = row.s_exact;
            argmax_p1 = row.n_r;
        }
        if (row.p == 0.5 && row.s_exact > best_p05) {
            best_p05 = row.s_exact;
            argmax_p05 = row.n_r;
        }
    }
    CHECK(argmax_p1 == 27);
    CHECK(argmax_p05 == 39);
    // the p=1 curve dominates the p=0.5 curve
    CHECK(best_p1 > best_p05);
    // leading-order and exact curves agree to a few percent here
    for (const auto& row : rows)
        if (row.n_r <= 100) CHECK(row.s_exact == doctest::Approx(row.s_leading).epsilon(0.05));
}

TEST_CASE("audit: identity holds on the default grid") {
    const auto rows = audit_dataset();
    REQUIRE(rows.size() == 36);
    for (const auto& row : rows) {
        CHECK(row.rel_residual < 1e-9);
        CHECK(row.difference == doctest::Approx(row.predicted_difference)
                                    .epsilon(1e-9)
                                    .scale(std::abs(row.var_general)));
    }
}

TEST_CASE("figure writers emit self-describing CSV") {
    const auto path = std::filesystem::temp_directory_path() / "kstat_fig1_test.csv";
    write_fig1_csv(path.string(), fig1_dataset(2), {"kstat test", "seed=2"});
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# kstat test");
    std::getline(is, line);
    CHECK(line == "# seed=2");
    std::getline(is, line);
    CHECK(line == "p,realization,n,k4,kappa4,band");
    std::filesystem::remove(path);
}

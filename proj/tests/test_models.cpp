/*
 * tests/test_models.cpp
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

#include <cmath>
#include <vector>

#include <json.hpp>

#include "kstat/json_io.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/models.hpp"
#include "kstat/random.hpp"
#include "test_helpers.hpp"

using namespace kstat;
using namespace kstat_test;

TEST_CASE("exact cumulants of the displaced mixture") {
    const auto c = exact_cumulants(DistModel{DisplacedMixture{1.0, 0.0}, 0.0});
    CHECK(c.kappa(2) == 1.0);
    CHECK(c.kappa(4) == -2.0);
    CHECK(c.kappa(6) == 16.0);
    CHECK(c.kappa(8) == -272.0);
    for (const int order : {1, 3, 5, 7}) CHECK(c.kappa(order) == 0.0);
    CHECK(c.provenance == Provenance::model_exact);
}

TEST_CASE("exact cumulants of the n=0/n=1 mixture") {
    const auto c = exact_cumulants(DistModel{FockMixture{1.0, 1.0}, 0.0});
    CHECK(c.kappa(2) == 3.0);
    CHECK(c.kappa(4) == -12.0);
    CHECK(c.kappa(6) == 240.0);
    CHECK(c.kappa(8) == -10080.0);
}

TEST_CASE("readout noise only ever shifts kappa2") {
    const auto noiseless = exact_cumulants(DistModel{FockMixture{0.0, 1.0}, 0.0});
    const auto noisy = exact_cumulants(DistModel{FockMixture{0.0, 1.0}, 2.0});
    CHECK(noisy.kappa(2) == 3.0);  // (2p+1) sigma0^2 + readout = 1 + 2
    for (int order = 3; order <= max_order; ++order) {
        CHECK(noisy.kappa(order) == noiseless.kappa(order));
        CHECK(noisy.kappa(order) == 0.0);
    }
    const auto mix = exact_cumulants(DistModel{DisplacedMixture{1.3, 0.7}, 0.4});
    CHECK(mix.kappa(2) == doctest::Approx(1.3 * 1.3 + 0.7 * 0.7 + 0.4).epsilon(1e-15));
    CHECK(mix.kappa(4) == doctest::Approx(-2.0 * std::pow(1.3, 4)).epsilon(1e-15));
}

TEST_CASE("displaced-mixture cumulants match the generating-function series") {
    // Independent route: raw moments of s*alpha + sigma*G (s fair sign,
    // G standard normal) fed through a generic power-series logarithm.
    for (const auto& [alpha_m, sigma_m] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {1.0, 0.5}, {2.0, 1.0}, {0.3, 2.0}}) {
        std::array<double, 9> mu{};
        for (int n = 1; n <= 8; ++n) {
            double acc = 0.0;
            for (int k = 0; k <= n; ++k) {
                if (k % 2 == 1 || (n - k) % 2 == 1) continue;  // odd moments of sign/Gaussian vanish
                acc += binomial(n, k) * std::pow(alpha_m, k) * double_factorial_odd((n - k) / 2) *
                       std::pow(sigma_m, n - k);
            }
            mu[static_cast<std::size_t>(n)] = acc;
        }
        const auto kappa = cumulants_by_series_log(mu);
        const auto c = exact_cumulants(DistModel{DisplacedMixture{alpha_m, sigma_m}, 0.0});
        for (int order = 1; order <= 8; ++order)
            CHECK(c.kappa(order) == doctest::Approx(kappa[static_cast<std::size_t>(order)])
                                        .epsilon(1e-10)
                                        .scale(std::abs(kappa[static_cast<std::size_t>(order)]) + 1.0));
    }
}

TEST_CASE("mixed-state cumulants match the moment series mu_2k = (2k-1)!!(1+2kp)") {
    for (const double p : {0.25, 0.5, 1.0}) {
        const double sigma0 = 1.1;
        std::array<double, 9> mu{};
        for (int k = 1; k <= 4; ++k)
            mu[static_cast<std::size_t>(2 * k)] =
                double_factorial_odd(k) * (1.0 + 2.0 * k * p) * std::pow(sigma0, 2 * k);
        const auto kappa = cumulants_by_series_log(mu);
        const auto c = exact_cumulants(DistModel{FockMixture{p, sigma0}, 0.0});
        for (int order = 2; order <= 8; order += 2)
            CHECK(c.kappa(order) == doctest::Approx(kappa[static_cast<std::size_t>(order)])
                                        .epsilon(1e-10)
                                        .scale(std::abs(kappa[static_cast<std::size_t>(order)]) + 1.0));
    }
}

TEST_CASE("convolution adds cumulants") {
    const auto mix = exact_cumulants(DistModel{DisplacedMixture{1.0, 0.0}, 0.0});
    const double sigma_y2 = 0.8;
    const auto noise = exact_cumulants(DistModel{Gaussian{0.0, sigma_y2}, 0.0});
    const auto sum = convolve(mix, noise);
    CHECK(sum.kappa(2) == doctest::Approx(1.0 + sigma_y2).epsilon(1e-15));
    CHECK(sum.kappa(4) == -2.0);
    CHECK(sum.provenance == Provenance::model_exact);

    CumulantSet zero;
    const auto same = convolve(mix, zero);
    for (int order = 1; order <= max_order; ++order) CHECK(same.kappa(order) == mix.kappa(order));

    const auto gg = convolve(noise, noise);
    CHECK(gg.kappa(2) == doctest::Approx(2.0 * sigma_y2));
    for (int order = 3; order <= max_order; ++order) CHECK(gg.kappa(order) == 0.0);
}

TEST_CASE("pdf values and symmetry") {
    CHECK(pdf(DistModel{FockMixture{1.0, 1.0}, 0.0}, 0.0) == 0.0);
    CHECK(pdf(DistModel{FockMixture{0.0, 1.0}, 0.0}, 0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-12));
    const DistModel disp{DisplacedMixture{2.0, 1.0}, 0.0};
    CHECK(pdf(disp, 2.0) == doctest::Approx(pdf(disp, -2.0)).epsilon(1e-15));
    CHECK(pdf(disp, 0.5) == doctest::Approx(pdf(disp, -0.5)).epsilon(1e-15));
}

TEST_CASE("pdf normalization and second moment by quadrature") {
    for (const double p : {0.0, 0.5, 1.0}) {
        const double sigma0 = 1.3;
        const DistModel model{FockMixture{p, sigma0}, 0.0};
        const double mass = simpson([&](double x) { return pdf(model, x); }, -15.0, 15.0);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        const double second = simpson([&](double x) { return x * x * pdf(model, x); }, -15.0, 15.0);
        CHECK(second == doctest::Approx((2.0 * p + 1.0) * sigma0 * sigma0).epsilon(1e-6));
    }
    const DistModel disp{DisplacedMixture{2.0, 0.7}, 0.0};
    CHECK(simpson([&](double x) { return pdf(disp, x); }, -15.0, 15.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pdf rejects what it cannot represent") {
    CHECK_THROWS_AS(pdf(DistModel{FockMixture{0.5, 1.0}, 0.1}, 0.0), input_error);
    CHECK_THROWS_AS(pdf(DistModel{DisplacedMixture{1.0, 0.0}, 0.0}, 0.0), input_error);
    CHECK_NOTHROW(pdf(DistModel{Gaussian{0.0, 1.0}, 0.5}, 0.0));
}

TEST_CASE("draw: determinism, empty draws, and the law of large numbers") {
    const DistModel model{FockMixture{0.5, 1.0}, 0.25};
    const Sample a = draw(model, 1000, 77);
    const Sample b = draw(model, 1000, 77);
    CHECK((a == b).all());
    CHECK(draw(model, 0, 1).size() == 0);

    const Sample gauss = draw(DistModel{Gaussian{0.0, 1.0}, 0.0}, 1000000, 5);
    CHECK(k_stat(accumulate(gauss), 2) == doctest::Approx(1.0).epsilon(0.01));

    const Sample fock = draw(DistModel{FockMixture{0.5, 1.0}, 0.0}, 1000000, 6);
    CHECK(k_stat(accumulate(fock), 4) == doctest::Approx(-3.0).epsilon(0.05));
}

TEST_CASE("draw: sample cumulants track the exact ones") {
    const DistModel model{FockMixture{0.7, 1.1}, 0.3};
    const auto expected = exact_cumulants(model);
    const auto c = sample_cumulants(accumulate(draw(model, 1000000, 8)), max_order);
    CHECK(c.kappa(2) == doctest::Approx(expected.kappa(2)).epsilon(0.05));
    CHECK(c.kappa(4) == doctest::Approx(expected.kappa(4)).epsilon(0.05));
    CHECK(c.kappa(6) == doctest::Approx(expected.kappa(6)).epsilon(0.15));
    CHECK(c.kappa(8) == doctest::Approx(expected.kappa(8)).epsilon(0.15));
}

TEST_CASE("model-with-noise draws match noiseless-plus-noise draws in distribution") {
    const double readout_var = 0.6;
    const DistModel noisy{DisplacedMixture{1.5, 0.8}, readout_var};
    const DistModel clean{DisplacedMixture{1.5, 0.8}, 0.0};
    const int n = 100000;
    const Sample a = draw(noisy, n, 21);
    Sample b = draw(clean, n, 22);
    b += draw(DistModel{Gaussian{0.0, readout_var}, 0.0}, n, 23);
    const std::vector<double> va(a.data(), a.data() + a.size());
    const std::vector<double> vb(b.data(), b.data() + b.size());
    CHECK(ks_statistic(va, vb) < ks_critical(1e-3, va.size(), vb.size()));
}

TEST_CASE("closed-form mixture variance: Gaussian limit and audit identity") {
    CumulantSet gauss;
    gauss.kappa(2) = 1.0;
    // alpha_m = 0 reduces to the Gaussian-only term of the general formula
    CHECK(var_k4_mixture_closed_form(0.0, 1.0, 100) == doctest::Approx(var_k4(gauss, 100)).epsilon(1e-14));
    // frozen literal value at alpha_m=1, sigma_m=0, N=1000
    CHECK(var_k4_mixture_closed_form(1.0, 0.0, 1000) ==
          doctest::Approx(0.015871872741062178).epsilon(1e-12));
    // the difference from the general formula is exactly the dropped terms
    const auto cums = exact_cumulants(DistModel{DisplacedMixture{1.0, 1.0}, 0.0});
    const double general = var_k4(cums, 1000);
    const double closed = var_k4_mixture_closed_form(1.0, 1.0, 1000);
    const double predicted =
        cums.kappa(8) / 1000.0 + 16.0 * cums.kappa(6) * cums.kappa(2) * 1000.0 / (1000.0 * 999.0);
    CHECK(general - closed == doctest::Approx(predicted).epsilon(1e-12));
    CHECK_THROWS_AS(var_k4_mixture_closed_form(1.0, 1.0, 3), input_error);
}

TEST_CASE("negative-Wigner threshold is strict") {
    CHECK_FALSE(wigner_flag(0.5));
    CHECK(wigner_flag(0.51));
    CHECK_FALSE(wigner_flag(0.0));
    CHECK(wigner_flag(1.0));
    CHECK_THROWS_AS(wigner_flag(-0.1), input_error);
    CHECK_THROWS_AS(wigner_flag(1.1), input_error);
}

TEST_CASE("model validation rejects bad parameters") {
    CHECK_THROWS_AS(validate(DistModel{Gaussian{0.0, -1.0}, 0.0}), input_error);
    CHECK_THROWS_AS(validate(DistModel{FockMixture{1.5, 1.0}, 0.0}), input_error);
    CHECK_THROWS_AS(validate(DistModel{FockMixture{0.5, 0.0}, 0.0}), input_error);
    CHECK_THROWS_AS(validate(DistModel{DisplacedMixture{-1.0, 0.0}, 0.0}), input_error);
    CHECK_THROWS_AS(validate(DistModel{Gaussian{0.0, 1.0}, -0.1}), input_error);
}

TEST_CASE("model JSON round-trip") {
    const std::vector<DistModel> models = {
        DistModel{Gaussian{0.25, 1.75}, 0.0},
        DistModel{DisplacedMixture{1.5, 0.5}, 0.125},
        DistModel{FockMixture{0.5, 1.0}, 2.0},
    };
    for (const auto& m : models) {
        nlohmann::json j = m;
        const auto back = j.get<DistModel>();
        const auto a = exact_cumulants(m);
        const auto b = exact_cumulants(back);
        for (int order = 1; order <= max_order; ++order) CHECK(a.kappa(order) == b.kappa(order));
        CHECK(back.readout_var == m.readout_var);
    }
    CHECK_THROWS_AS(nlohmann::json::parse(R"({"variant":"triangle","params":{}})").get<DistModel>(),
                    input_error);
}

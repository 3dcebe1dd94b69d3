/*
 * src/json_io.cpp
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

#include "kstat/json_io.hpp"

#include <fstream>

#include "kstat/errors.hpp"

namespace kstat {

void to_json(nlohmann::json& j, const DistModel& m) {
    std::visit(
        [&j](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Gaussian>) {
                j["variant"] = "gaussian";
                j["params"] = {{"mean", c.mean}, {"var", c.var}};
            } else if constexpr (std::is_same_v<T, DisplacedMixture>) {
                j["variant"] = "displaced_mixture";
                j["params"] = {{"alpha_m", c.alpha_m}, {"sigma_m", c.sigma_m}};
            } else {
                j["variant"] = "fock_mixture";
                j["params"] = {{"p", c.p}, {"sigma0", c.sigma0}};
            }
        },
        m.component);
    j["readout_var"] = m.readout_var;
}

void from_json(const nlohmann::json& j, DistModel& m) {
    const auto variant = j.at("variant").get<std::string>();
    const auto& params = j.at("params");
    if (variant == "gaussian") {
        m.component = Gaussian{params.at("mean").get<double>(), params.at("var").get<double>()};
    } else if (variant == "displaced_mixture") {
        m.component =
            DisplacedMixture{params.at("alpha_m").get<double>(), params.at("sigma_m").get<double>()};
    } else if (variant == "fock_mixture") {
        m.component = FockMixture{params.at("p").get<double>(), params.at("sigma0").get<double>()};
    } else {
        throw input_error("In kstat::from_json: unknown model variant '" + variant + "'");
    }
    m.readout_var = j.value("readout_var", 0.0);
    validate(m);
}

void to_json(nlohmann::json& j, const MeasurementConfig& cfg) {
    j = {{"g", cfg.g},         {"n_l", cfg.n_l},           {"n_a", cfg.n_a},
         {"n_a_max", cfg.n_a_max}, {"sigma_a2", cfg.sigma_a2}, {"n_r", cfg.n_r},
         {"pulses", cfg.pulses}};
}

void from_json(const nlohmann::json& j, MeasurementConfig& cfg) {
    const MeasurementConfig defaults = default_config();
    cfg.g = j.value("g", defaults.g);
    cfg.n_l = j.value("n_l", defaults.n_l);
    cfg.n_a = j.value("n_a", defaults.n_a);
    cfg.n_a_max = j.value("n_a_max", defaults.n_a_max);
    cfg.sigma_a2 = j.value("sigma_a2", defaults.sigma_a2);
    cfg.n_r = j.value("n_r", defaults.n_r);
    cfg.pulses = j.value("pulses", defaults.pulses);
    validate(cfg);
}

void to_json(nlohmann::json& j, const TestResult& r) {
    j = {{"k4", r.k4},
         {"k2", r.k2},
         {"sigma_null", r.null_sigma},
         {"sigma_alt", nullptr},
         {"z", r.z_null},
         {"z_alt", nullptr},
         {"threshold_sigma", r.threshold},
         {"verdict", r.non_gaussian},
         {"verdict_basis", "null"},
         {"n", r.n}};
    if (r.alt_sigma) j["sigma_alt"] = *r.alt_sigma;
    if (r.z_alt) j["z_alt"] = *r.z_alt;
}

namespace {

const char* method_name(VarianceMethod m) {
    switch (m) {
        case VarianceMethod::analytic_model: return "analytic-model";
        case VarianceMethod::plugin: return "plugin";
        default: return "none";
    }
}

}  // namespace

void to_json(nlohmann::json& j, const Estimate& e) {
    j = {{"order", e.order},
         {"value", e.value},
         {"n", e.n},
         {"variance", nullptr},
         {"sigma", nullptr},
         {"variance_method", method_name(e.variance_method)},
         {"degenerate_variance", e.degenerate_variance}};
    if (e.variance) {
        j["variance"] = *e.variance;
        j["sigma"] = std::sqrt(*e.variance);
    }
}

void to_json(nlohmann::json& j, const BudgetResult& r) {
    j = {{"optimal_nr", r.optimal_nr},
         {"optimal_s", r.optimal_s},
         {"asymptotic_sigma_r", r.asymptotic_sigma_r},
         {"asymptotic_nr", r.asymptotic_nr},
         {"crossing_condition", "s_low = s_high"},
         {"unimodal", r.unimodal},
         {"points", r.curve.size()}};
}

namespace {

nlohmann::json parse_file(const std::string& path, const char* what) {
    std::ifstream is(path);
    if (!is) throw input_error(std::string("In kstat::") + what + ": cannot open '" + path + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("In kstat::") + what + ": '" + path + "' is not valid JSON: " +
                          e.what());
    }
    return j;
}

}  // namespace

DistModel load_model(const std::string& path) {
    try {
        return parse_file(path, "load_model").get<DistModel>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error("In kstat::load_model: bad model file '" + path + "': " + e.what());
    }
}

MeasurementConfig load_config(const std::string& path) {
    try {
        return parse_file(path, "load_config").get<MeasurementConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error("In kstat::load_config: bad config file '" + path + "': " + e.what());
    }
}

}  // namespace kstat

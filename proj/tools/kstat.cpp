/*
 * tools/kstat.cpp
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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kstat/budget.hpp"
#include "kstat/errors.hpp"
#include "kstat/figures.hpp"
#include "kstat/inference.hpp"
#include "kstat/io.hpp"
#include "kstat/json_io.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/models.hpp"
#include "kstat/qnd.hpp"
#include "kstat/random.hpp"
#include "kstat/version.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_degenerate = 3;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("KSTAT_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::vector<std::string> run_meta(const std::string& command, std::uint64_t seed,
                                  const std::vector<std::string>& params) {
    std::vector<std::string> meta = {std::string("kstat ") + std::string(kstat::version),
                                     "format=csv", "command=" + command, "seed=" + std::to_string(seed)};
    meta.insert(meta.end(), params.begin(), params.end());
    return meta;
}

void emit_json(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << std::endl;
    } else {
        kstat::write_file_atomically(out_path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }
}

// --- estimate ---------------------------------------------------------------

struct EstimateArgs {
    std::string input;
    std::string out;
    std::string format = "json";
};

void check_format(const std::string& format) {
    if (format != "json" && format != "csv")
        throw kstat::input_error("unknown --format '" + format + "' (expected json or csv)");
}

int cmd_estimate(const EstimateArgs& args) {
    check_format(args.format);
    const kstat::Sample sample = kstat::read_sample(args.input);
    if (sample.size() == 0) throw kstat::input_error("estimate: '" + args.input + "' holds no readings");
    if (sample.size() < 4)
        throw kstat::input_error("estimate: need at least 4 readings, got " +
                                 std::to_string(sample.size()));

    const auto ps = kstat::accumulate(sample);
    if (!(kstat::k_stat(ps, 2) > 0))
        throw kstat::degenerate_error("estimate: sample in '" + args.input + "' has no dispersion");
    const bool with_errors = ps.n >= kstat::max_order;

    json per_order = json::object();
    std::vector<kstat::Estimate> estimates;
    for (const int order : {2, 3, 4}) {
        kstat::Estimate est;
        if (with_errors && order >= 3) {
            est = kstat::estimate_with_error(sample, order);
        } else {
            est.value = kstat::k_stat(ps, order);
            est.order = order;
            est.n = ps.n;
            if (with_errors && order == 2) {
                const auto cums = kstat::sample_cumulants(ps, kstat::max_order);
                const double v = kstat::var_k2(cums, ps.n);
                if (v >= 0) {
                    est.variance = v;
                    est.variance_method = kstat::VarianceMethod::plugin;
                } else {
                    est.degenerate_variance = true;
                }
            }
        }
        estimates.push_back(est);
        per_order["k" + std::to_string(order)] = est;
    }

    if (args.format == "csv") {
        const auto write_rows = [&](std::ostream& os) {
            for (const auto& line : run_meta("estimate", 0, {"input=" + args.input})) os << "# " << line << '\n';
            os << "order,value,sigma,variance_method,n\n";
            for (const auto& est : estimates) {
                os << est.order << ',' << kstat::format_full(est.value) << ',';
                if (est.variance) os << kstat::format_full(std::sqrt(*est.variance));
                os << ','
                   << (est.variance_method == kstat::VarianceMethod::plugin ? "plugin" : "none") << ','
                   << est.n << '\n';
            }
        };
        if (args.out.empty())
            write_rows(std::cout);
        else
            kstat::write_file_atomically(args.out, write_rows);
        return exit_ok;
    }

    json out = {{"version", std::string(kstat::version)},
                {"input", args.input},
                {"n", ps.n},
                {"estimates", per_order}};
    emit_json(out, args.out);
    if (!args.out.empty()) {
        for (const auto& est : estimates) {
            std::cout << "k" << est.order << " = " << est.value;
            if (est.variance) std::cout << " +- " << std::sqrt(*est.variance);
            std::cout << '\n';
        }
        std::cout << "n = " << ps.n << std::endl;
    }
    return exit_ok;
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string model_path;
    std::string config_path;
    std::int64_t n = 0;
    double alpha = 0.0;
    int preps = 0;
    int nr = 0;
    bool metapulses = false;
    double p_plus = 0.5;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_simulate(const SimulateArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    if (args.out.empty()) throw kstat::input_error("simulate: --out is required");

    if (!args.model_path.empty()) {
        if (args.n <= 0) throw kstat::input_error("simulate: --n must be positive with --model");
        const auto model = kstat::load_model(args.model_path);
        const auto sample = kstat::draw(model, args.n, seed);
        const json mj = model;
        kstat::write_sample(args.out, sample,
                            run_meta("simulate", seed,
                                     {"model=" + mj.dump(), "n=" + std::to_string(args.n)}));
        std::cout << "wrote " << sample.size() << " draws to " << args.out << std::endl;
        return exit_ok;
    }

    auto cfg = args.config_path.empty() ? kstat::default_config() : kstat::load_config(args.config_path);
    if (args.nr > 0) cfg.n_r = args.nr;
    if (args.preps <= 0) throw kstat::input_error("simulate: --preps must be positive with --config");
    const json cj = cfg;

    if (args.metapulses) {
        const auto plus = kstat::simulate_preparations(cfg, args.alpha, args.preps,
                                                       kstat::derive_seed(seed, 1), "DM[+]");
        const auto minus = kstat::simulate_preparations(cfg, -args.alpha, args.preps,
                                                        kstat::derive_seed(seed, 2), "DM[-]");
        const auto data = kstat::build_ng_dataset(plus, minus, cfg.n_r, kstat::derive_seed(seed, 3),
                                                  args.p_plus);
        kstat::write_sample(args.out, data,
                            run_meta("simulate", seed,
                                     {"config=" + cj.dump(), "alpha=" + kstat::format_full(args.alpha),
                                      "preps=" + std::to_string(args.preps),
                                      "n_r=" + std::to_string(cfg.n_r),
                                      "p_plus=" + kstat::format_full(args.p_plus)}));
        std::cout << "wrote " << data.size() << " metapulses to " << args.out << std::endl;
        return exit_ok;
    }

    std::vector<kstat::PreparationRecord> records;
    for (int i = 0; i < args.preps; ++i)
        records.push_back(
            kstat::simulate_preparation(cfg, args.alpha, kstat::derive_seed(seed, static_cast<std::uint64_t>(i))));
    kstat::write_records_csv(args.out, records,
                             run_meta("simulate", seed,
                                      {"config=" + cj.dump(), "alpha=" + kstat::format_full(args.alpha),
                                       "preps=" + std::to_string(args.preps)}));
    std::cout << "wrote " << records.size() << " records to " << args.out << std::endl;
    return exit_ok;
}

// --- test -------------------------------------------------------------------

struct TestArgs {
    std::string input;
    std::string model_path;
    double threshold = 3.0;
    std::string out;
    std::string format = "json";
    int realizations = 0;  // > 0 adds a bootstrap S_N block
    int subsample = 20;
    std::optional<std::uint64_t> seed;
};

int cmd_test(const TestArgs& args) {
    check_format(args.format);
    const kstat::Sample sample = kstat::read_sample(args.input);
    std::optional<kstat::DistModel> alt;
    if (!args.model_path.empty()) alt = kstat::load_model(args.model_path);
    const auto result = kstat::test_non_gaussian(sample, alt, args.threshold);

    std::optional<kstat::BootstrapResult> boot;
    if (args.realizations > 0) {
        kstat::BootstrapOptions opts;
        opts.realizations = args.realizations;
        opts.subsample = args.subsample;
        opts.seed = resolve_seed(args.seed);
        boot = kstat::bootstrap_snr(sample, opts);
    }

    if (args.format == "csv") {
        const auto write_rows = [&](std::ostream& os) {
            for (const auto& line : run_meta("test", 0, {"input=" + args.input})) os << "# " << line << '\n';
            os << "k4,k2,sigma_null,sigma_alt,z,z_alt,threshold_sigma,verdict,n,s_n\n";
            os << kstat::format_full(result.k4) << ',' << kstat::format_full(result.k2) << ','
               << kstat::format_full(result.null_sigma) << ',';
            if (result.alt_sigma) os << kstat::format_full(*result.alt_sigma);
            os << ',' << kstat::format_full(result.z_null) << ',';
            if (result.z_alt) os << kstat::format_full(*result.z_alt);
            os << ',' << kstat::format_full(result.threshold) << ',' << (result.non_gaussian ? 1 : 0)
               << ',' << result.n << ',';
            if (boot) os << kstat::format_full(boot->s_n);
            os << '\n';
        };
        if (args.out.empty())
            write_rows(std::cout);
        else
            kstat::write_file_atomically(args.out, write_rows);
        return exit_ok;
    }

    json j = result;
    j["version"] = std::string(kstat::version);
    j["input"] = args.input;
    if (boot) {
        j["bootstrap"] = {{"realizations", boot->realizations},
                          {"subsample", boot->subsample_size},
                          {"mean_k4", boot->mean_k4},
                          {"var_k4", boot->var_k4},
                          {"s_n", boot->s_n}};
    }
    emit_json(j, args.out);
    if (!args.out.empty())
        std::cout << (result.non_gaussian ? "non-Gaussian" : "consistent with Gaussian") << " at "
                  << args.threshold << " sigma (z = " << result.z_null << ")" << std::endl;
    return exit_ok;
}

// --- optimize ---------------------------------------------------------------

struct OptimizeArgs {
    double budget = 1e5;
    double noise_coeff = 20.0;
    double p = 1.0;
    double sigma0 = 1.0;
    std::string out;
    std::string json_out;
};

int cmd_optimize(const OptimizeArgs& args) {
    kstat::Budget budget;
    budget.total_probes = static_cast<std::int64_t>(args.budget);
    budget.noise_coefficient = args.noise_coeff;
    budget.p = args.p;
    budget.sigma0 = args.sigma0;
    const auto result = kstat::optimize(budget);

    if (!args.out.empty()) {
        kstat::write_file_atomically(args.out, [&](std::ostream& os) {
            for (const auto& line :
                 run_meta("optimize", 0,
                          {"budget=" + std::to_string(budget.total_probes),
                           "noise_coefficient=" + kstat::format_full(budget.noise_coefficient),
                           "p=" + kstat::format_full(budget.p),
                           "sigma0=" + kstat::format_full(budget.sigma0),
                           "crossing_condition=s_low = s_high"}))
                os << "# " << line << '\n';
            os << "n_r,n_m,sigma_r,s_exact,s_leading\n";
            for (const auto& pt : result.curve)
                os << pt.n_r << ',' << pt.n_m << ',' << kstat::format_full(pt.sigma_r) << ','
                   << kstat::format_full(pt.s_exact) << ',' << kstat::format_full(pt.s_leading) << '\n';
        });
    }
    json j = result;
    j["version"] = std::string(kstat::version);
    j["budget"] = budget.total_probes;
    j["noise_coefficient"] = budget.noise_coefficient;
    j["p"] = budget.p;
    j["sigma0"] = budget.sigma0;
    emit_json(j, args.json_out);
    if (!args.json_out.empty())
        std::cout << "optimal n_r = " << result.optimal_nr << " (S = " << result.optimal_s
                  << "), asymptotic crossing s_low = s_high at n_r ~ " << result.asymptotic_nr
                  << std::endl;
    return exit_ok;
}

// --- reproduce ----------------------------------------------------------------

struct ReproduceArgs {
    std::string figure;
    std::string out_dir = ".";
    std::string config_path;
    std::optional<std::uint64_t> seed;
};

int cmd_reproduce(const ReproduceArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    std::filesystem::create_directories(args.out_dir);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(args.out_dir) / name).string();
    };
    const auto cfg = args.config_path.empty() ? kstat::default_config() : kstat::load_config(args.config_path);
    const json cj = cfg;

    if (args.figure == "fig1") {
        kstat::write_fig1_csv(path("fig1.csv"), kstat::fig1_dataset(seed),
                              run_meta("reproduce", seed,
                                       {"figure=fig1", "p={0,1/3,1/2,2/3}", "realizations=10",
                                        "scaling=unit-variance"}));
    } else if (args.figure == "fig3") {
        kstat::write_fig3_csv(path("fig3.csv"), kstat::fig3_dataset(cfg, seed),
                              run_meta("reproduce", seed, {"figure=fig3", "config=" + cj.dump()}));
    } else if (args.figure == "fig4") {
        kstat::write_fig4_csv(path("fig4.csv"), kstat::fig4_dataset(cfg, seed),
                              run_meta("reproduce", seed,
                                       {"figure=fig4", "config=" + cj.dump(), "realizations=33",
                                        "subsample=20"}));
    } else if (args.figure == "fig5") {
        kstat::Budget budget;
        kstat::write_fig5_csv(path("fig5.csv"), kstat::fig5_dataset(budget),
                              run_meta("reproduce", seed,
                                       {"figure=fig5", "budget=" + std::to_string(budget.total_probes),
                                        "noise_coefficient=" +
                                            kstat::format_full(budget.noise_coefficient),
                                        "p={1,0.5}"}));
    } else {
        throw kstat::input_error("reproduce: unknown figure id '" + args.figure +
                                 "' (expected fig1, fig3, fig4 or fig5)");
    }
    std::cout << "wrote " << path((args.figure + ".csv").c_str()) << std::endl;
    return exit_ok;
}

// --- audit --------------------------------------------------------------------

struct AuditArgs {
    std::string out;
};

int cmd_audit(const AuditArgs& args) {
    const auto rows = kstat::audit_dataset();
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row.rel_residual);
    if (!args.out.empty())
        kstat::write_audit_csv(args.out, rows,
                               run_meta("audit", 0,
                                        {"comparison=general var(k4) vs mixture closed form",
                                         "predicted_difference=kappa8/N + 16 kappa6 kappa2 N/N_(1)"}));
    std::cout << "closed-form mixture var(k4) differs from the general formula by exactly the\n"
                 "kappa8/N + 16 kappa6 kappa2 N/N_(1) terms; max relative residual of the\n"
                 "identity over the audit grid: "
              << worst << std::endl;
    if (!args.out.empty()) std::cout << "wrote " << args.out << std::endl;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measurement-noise-immune quantification of non-Gaussian distributions via "
                 "unbiased cumulant estimators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kstat::version));

    EstimateArgs estimate_args;
    auto* estimate = app.add_subcommand("estimate", "k2, k3, k4 of a sample file with plug-in error bars");
    estimate->add_option("--input", estimate_args.input, "sample file, one reading per line")->required();
    estimate->add_option("--out", estimate_args.out, "write the report here instead of stdout");
    estimate->add_option("--format", estimate_args.format, "json (default) or csv");

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "draw from a model, or simulate probe records");
    simulate->add_option("--model", simulate_args.model_path, "model JSON (draw i.i.d. samples)");
    simulate->add_option("--config", simulate_args.config_path, "measurement config JSON");
    simulate->add_option("--n", simulate_args.n, "number of draws (with --model)");
    simulate->add_option("--alpha", simulate_args.alpha, "displacement in spins (with --config)");
    simulate->add_option("--preps", simulate_args.preps, "preparations per pool (with --config)");
    simulate->add_option("--nr", simulate_args.nr, "readings per metapulse");
    simulate->add_flag("--metapulses", simulate_args.metapulses,
                       "emit a mixed +-alpha metapulse sample instead of records");
    simulate->add_option("--p-plus", simulate_args.p_plus, "probability of the +alpha pool per metapulse");
    simulate->add_option("--seed", simulate_args.seed, "RNG seed (or env KSTAT_SEED; default 1)");
    simulate->add_option("--out", simulate_args.out, "output file")->required();

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "k4-based non-Gaussianity hypothesis test");
    test->add_option("--input", test_args.input, "sample file")->required();
    test->add_option("--model", test_args.model_path, "alternative model JSON (adds sigma_alt)");
    test->add_option("--threshold-sigma", test_args.threshold, "verdict threshold in sigmas");
    test->add_option("--out", test_args.out, "write the result here instead of stdout");
    test->add_option("--format", test_args.format, "json (default) or csv");
    test->add_option("--realizations", test_args.realizations,
                     "bootstrap realization count (adds an S_N block)");
    test->add_option("--subsample", test_args.subsample, "bootstrap subsample size (default 20)");
    test->add_option("--seed", test_args.seed, "bootstrap resampling seed (or env KSTAT_SEED)");

    OptimizeArgs optimize_args;
    auto* optimize = app.add_subcommand("optimize", "split a probe budget between precision and statistics");
    optimize->add_option("--budget", optimize_args.budget, "total probe pulses n_m * n_r");
    optimize->add_option("--noise-coeff", optimize_args.noise_coeff, "c in sigma_R^2 = c/n_r");
    optimize->add_option("--p", optimize_args.p, "excitation probability of the mixed state");
    optimize->add_option("--sigma0", optimize_args.sigma0, "ground-state width");
    optimize->add_option("--out", optimize_args.out, "S(n_r) curve CSV");
    optimize->add_option("--json-out", optimize_args.json_out, "optimum JSON (default: stdout)");

    ReproduceArgs reproduce_args;
    auto* reproduce = app.add_subcommand("reproduce", "emit a figure dataset as CSV");
    reproduce->add_option("--figure", reproduce_args.figure, "fig1, fig3, fig4 or fig5")->required();
    reproduce->add_option("--out-dir", reproduce_args.out_dir, "output directory");
    reproduce->add_option("--config", reproduce_args.config_path, "measurement config JSON (fig3/fig4)");
    reproduce->add_option("--seed", reproduce_args.seed, "RNG seed (or env KSTAT_SEED; default 1)");

    AuditArgs audit_args;
    auto* audit = app.add_subcommand("audit", "compare the closed-form mixture var(k4) with the general formula");
    audit->add_option("--out", audit_args.out, "audit report CSV");

    try {
        app.parse(argc, argv);
        if (estimate->parsed()) return cmd_estimate(estimate_args);
        if (simulate->parsed()) return cmd_simulate(simulate_args);
        if (test->parsed()) return cmd_test(test_args);
        if (optimize->parsed()) return cmd_optimize(optimize_args);
        if (reproduce->parsed()) return cmd_reproduce(reproduce_args);
        if (audit->parsed()) return cmd_audit(audit_args);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    } catch (const kstat::degenerate_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return exit_degenerate;
    } catch (const kstat::input_error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return exit_input_error;
    }
}

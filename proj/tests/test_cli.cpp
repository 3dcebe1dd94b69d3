/*
 * tests/test_cli.cpp
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kstat/qnd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path cli = KSTAT_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run(const std::string& args, const std::string& env = {}) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("kstat_cli_out_" + std::to_string(counter++));
    const std::string command =
        env + (env.empty() ? "" : " ") + cli.string() + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream is(out);
    std::stringstream ss;
    ss << is.rdbuf();
    result.stdout_text = ss.str();
    fs::remove(out);
    return result;
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "kstat_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string file_text(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("estimate: four readings give k4 = 2/3 without a variance") {
    const auto dir = scratch_dir();
    const auto sample = dir / "four.txt";
    {
        std::ofstream os(sample);
        os << "-1\n0\n0\n1\n";
    }
    const auto r = run("estimate --input " + sample.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.stdout_text);
    CHECK(j.at("n") == 4);
    CHECK(j.at("estimates").at("k4").at("value").get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(j.at("estimates").at("k4").at("variance").is_null());
    CHECK(j.at("version").is_string());
}

TEST_CASE("estimate: empty and short files are input errors") {
    const auto dir = scratch_dir();
    const auto empty = dir / "empty.txt";
    std::ofstream(empty).close();
    CHECK(run("estimate --input " + empty.string()).exit_code == 2);
    const auto missing = dir / "does_not_exist.txt";
    CHECK(run("estimate --input " + missing.string()).exit_code == 2);
}

TEST_CASE("test: constant sample exits with the degenerate-statistics code") {
    const auto dir = scratch_dir();
    const auto constant = dir / "const.txt";
    {
        std::ofstream os(constant);
        for (int i = 0; i < 20; ++i) os << "2.5\n";
    }
    CHECK(run("test --input " + constant.string()).exit_code == 3);
    CHECK(run("estimate --input " + constant.string()).exit_code == 3);
}

TEST_CASE("simulate: identical seeds give identical files, the flag beats the env var") {
    const auto dir = scratch_dir();
    const auto model = dir / "gauss.json";
    {
        std::ofstream os(model);
        os << R"({"variant":"gaussian","params":{"mean":0,"var":1},"readout_var":0})";
    }
    const auto a = dir / "a.txt";
    const auto b = dir / "b.txt";
    const auto c = dir / "c.txt";
    REQUIRE(run("simulate --model " + model.string() + " --n 500 --seed 9 --out " + a.string()).exit_code == 0);
    REQUIRE(run("simulate --model " + model.string() + " --n 500 --seed 9 --out " + b.string()).exit_code == 0);
    REQUIRE(run("simulate --model " + model.string() + " --n 500 --seed 10 --out " + c.string()).exit_code == 0);
    CHECK(file_text(a) == file_text(b));
    CHECK(file_text(a) != file_text(c));

    // env seed is honored, explicit flag wins
    const auto d = dir / "d.txt";
    const auto e = dir / "e.txt";
    REQUIRE(run("simulate --model " + model.string() + " --n 500 --out " + d.string(),
                "KSTAT_SEED=9").exit_code == 0);
    REQUIRE(run("simulate --model " + model.string() + " --n 500 --seed 9 --out " + e.string(),
                "KSTAT_SEED=333").exit_code == 0);
    CHECK(file_text(d) == file_text(a));
    CHECK(file_text(e) == file_text(a));
}

TEST_CASE("simulate records with the default config, then ingest them back") {
    const auto dir = scratch_dir();
    const auto records = dir / "records.csv";
    REQUIRE(run("simulate --alpha 10000 --preps 7 --seed 4 --out " + records.string()).exit_code == 0);
    const auto back = kstat::ingest(records.string());
    REQUIRE(back.size() == 7);
    for (const auto& rec : back) {
        CHECK(rec.label == "DM[+]");
        CHECK(rec.readings.size() == 100);
        CHECK(rec.seed.has_value());
    }
    // omitting --preps in record mode is an input error
    CHECK(run("simulate --alpha 10000 --seed 4 --out " + records.string()).exit_code == 2);
}

TEST_CASE("simulate: metapulse mode writes a self-describing sample file") {
    const auto dir = scratch_dir();
    const auto sample = dir / "metapulses.txt";
    const auto r = run("simulate --alpha 10000 --preps 7 --seed 4 --nr 4 --metapulses --out " +
                       sample.string());
    REQUIRE(r.exit_code == 0);
    const auto text = file_text(sample);
    CHECK(text.find("# kstat") == 0);
    CHECK(text.find("# n_r=4") != std::string::npos);
}

TEST_CASE("optimize: defaults find the grid optimum and report the crossing") {
    const auto dir = scratch_dir();
    const auto curve = dir / "curve.csv";
    const auto opt = dir / "opt.json";
    const auto r = run("optimize --budget 1e5 --noise-coeff 20 --p 1 --sigma0 1 --out " +
                       curve.string() + " --json-out " + opt.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(file_text(opt));
    CHECK(j.at("optimal_nr") == 27);
    CHECK(j.at("asymptotic_nr").get<double>() == doctest::Approx(9.3428).epsilon(1e-4));
    CHECK(j.at("crossing_condition") == "s_low = s_high");
    const auto curve_text = file_text(curve);
    CHECK(curve_text.find("n_r,n_m,sigma_r,s_exact,s_leading") != std::string::npos);
    CHECK(curve_text.find("# crossing_condition=s_low = s_high") != std::string::npos);
}

TEST_CASE("reproduce: fig files are self-describing; unknown ids are input errors") {
    const auto dir = scratch_dir() / "figs";
    const auto r = run("reproduce --figure fig5 --out-dir " + dir.string() + " --seed 2");
    REQUIRE(r.exit_code == 0);
    const auto text = file_text(dir / "fig5.csv");
    CHECK(text.find("# kstat ") == 0);
    CHECK(text.find("# seed=2") != std::string::npos);
    CHECK(text.find("p,n_r,n_m,sigma_r,s_exact,s_leading") != std::string::npos);

    CHECK(run("reproduce --figure fig2 --out-dir " + dir.string()).exit_code == 2);
}

TEST_CASE("reproduce: fig1 is bit-reproducible for a fixed seed") {
    const auto dir_a = scratch_dir() / "figs_a";
    const auto dir_b = scratch_dir() / "figs_b";
    REQUIRE(run("reproduce --figure fig1 --out-dir " + dir_a.string() + " --seed 12").exit_code == 0);
    REQUIRE(run("reproduce --figure fig1 --out-dir " + dir_b.string() + " --seed 12").exit_code == 0);
    CHECK(file_text(dir_a / "fig1.csv") == file_text(dir_b / "fig1.csv"));
}

TEST_CASE("audit: report carries the identity residual") {
    const auto dir = scratch_dir();
    const auto report = dir / "audit.csv";
    const auto r = run("audit --out " + report.string());
    REQUIRE(r.exit_code == 0);
    const auto text = file_text(report);
    CHECK(text.find("alpha_m,sigma_m,n,var_general,var_closed_form,difference,predicted_difference,"
                    "rel_residual") != std::string::npos);
}

TEST_CASE("test: bootstrap flags add an S_N block; csv format emits one row") {
    const auto dir = scratch_dir();
    const auto model = dir / "mix.json";
    {
        std::ofstream os(model);
        os << R"({"variant":"displaced_mixture","params":{"alpha_m":3,"sigma_m":1},"readout_var":0})";
    }
    const auto sample = dir / "mix.txt";
    REQUIRE(run("simulate --model " + model.string() + " --n 100 --seed 8 --out " + sample.string())
                .exit_code == 0);
    const auto r = run("test --input " + sample.string() + " --model " + model.string() +
                       " --realizations 33 --subsample 20 --seed 1");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.stdout_text);
    CHECK(j.at("bootstrap").at("realizations") == 33);
    CHECK(j.at("bootstrap").at("subsample") == 20);
    CHECK(j.at("bootstrap").at("s_n").get<double>() > 0.0);

    const auto csv = run("test --input " + sample.string() + " --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.stdout_text.find("k4,k2,sigma_null,sigma_alt,z,z_alt,threshold_sigma,verdict,n,s_n") !=
          std::string::npos);

    const auto est_csv = run("estimate --input " + sample.string() + " --format csv");
    REQUIRE(est_csv.exit_code == 0);
    CHECK(est_csv.stdout_text.find("order,value,sigma,variance_method,n") != std::string::npos);
    CHECK(run("estimate --input " + sample.string() + " --format yaml").exit_code == 2);
}

TEST_CASE("test: verdict false for Gaussian data at 3 sigma") {
    const auto dir = scratch_dir();
    const auto model = dir / "gauss.json";
    {
        std::ofstream os(model);
        os << R"({"variant":"gaussian","params":{"mean":0,"var":1},"readout_var":0})";
    }
    const auto sample = dir / "gauss.txt";
    REQUIRE(run("simulate --model " + model.string() + " --n 1000 --seed 5 --out " + sample.string())
                .exit_code == 0);
    const auto r = run("test --input " + sample.string() + " --threshold-sigma 3");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.stdout_text);
    CHECK(j.at("verdict") == false);
    CHECK(j.at("n") == 1000);
}

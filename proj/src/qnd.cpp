/*
 * src/qnd.cpp
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

#include "kstat/qnd.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "kstat/errors.hpp"
#include "kstat/io.hpp"
#include "kstat/random.hpp"

namespace kstat {

namespace {

const std::array<std::string, 5> known_labels = {"baseline", "DM[+]", "DM[-]", "DM[0]", "atoms"};

bool is_baseline_provider(const std::string& label) { return label == "baseline" || label == "DM[0]"; }

}  // namespace

bool is_known_label(const std::string& label) {
    for (const auto& l : known_labels)
        if (l == label) return true;
    return false;
}

MeasurementConfig default_config() {
    MeasurementConfig cfg;
    cfg.n_l = 3.7e6;
    cfg.n_a = 1e6;
    cfg.n_a_max = 1e6;
    cfg.pulses = 100;
    cfg.n_r = 1;
    // sigma_a2 from the measured readout-to-atomic ratio at n_r = 1;
    // G then follows from sigma_a2 = G^2 * var(F_z)|thermal at n_a_max,
    // which keeps simulated records and the var(M) decomposition exactly
    // consistent (numerically G ~ 6.9e-8 rad/spin).
    cfg.sigma_a2 = (1.0 / cfg.n_l) / readout_to_atomic_ratio;
    cfg.g = std::sqrt(cfg.sigma_a2 / thermal_variance(cfg.n_a_max));
    return cfg;
}

void validate(const MeasurementConfig& cfg) {
    if (!(cfg.g > 0) || !(cfg.n_l > 0) || !(cfg.n_a > 0) || !(cfg.n_a_max > 0) || !(cfg.sigma_a2 > 0))
        throw input_error("In kstat::validate: measurement config needs positive g, n_l, n_a, n_a_max, sigma_a2");
    if (!(cfg.atom_fraction() > 0) || cfg.atom_fraction() > 1.0)
        throw input_error("In kstat::validate: n_a/n_a_max must lie in (0,1]");
    if (cfg.n_r < 1 || cfg.pulses < 1)
        throw input_error("In kstat::validate: n_r and pulses must be >= 1");
}

double thermal_variance(double n_a) {
    if (n_a < 0) throw input_error("In kstat::thermal_variance: negative atom number");
    return 2.0 * n_a / 3.0;
}

double metapulse_variance(const MeasurementConfig& cfg) {
    validate(cfg);
    const double frac = cfg.atom_fraction();
    const double nr = static_cast<double>(cfg.n_r);
    return cfg.sigma_a2 * frac * frac * nr * nr + cfg.readout_var();
}

PreparationRecord simulate_preparation(const MeasurementConfig& cfg, double alpha, std::uint64_t seed,
                                       std::string label) {
    validate(cfg);
    if (label.empty()) label = alpha > 0 ? "DM[+]" : (alpha < 0 ? "DM[-]" : "DM[0]");
    if (!is_known_label(label))
        throw input_error("In kstat::simulate_preparation: unknown label '" + label + "'");

    auto engine = make_engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    PreparationRecord rec;
    rec.label = std::move(label);
    rec.seed = seed;
    rec.true_fz = alpha + std::sqrt(thermal_variance(cfg.n_a)) * normal(engine);
    rec.readings.resize(cfg.pulses);
    const double signal = cfg.g * rec.true_fz;
    const double shot_sd = std::sqrt(1.0 / cfg.n_l);
    for (int i = 0; i < cfg.pulses; ++i) rec.readings[i] = signal + shot_sd * normal(engine);
    return rec;
}

std::vector<PreparationRecord> simulate_preparations(const MeasurementConfig& cfg, double alpha,
                                                     int count, std::uint64_t seed,
                                                     const std::string& label) {
    if (count < 0) throw input_error("In kstat::simulate_preparations: negative count");
    std::vector<PreparationRecord> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(simulate_preparation(cfg, alpha, derive_seed(seed, static_cast<std::uint64_t>(i)), label));
    return out;
}

double compose_metapulse(const Sample& readings, int n_r, int start) {
    if (n_r < 1) throw input_error("In kstat::compose_metapulse: n_r must be >= 1");
    if (start < 0 || static_cast<Eigen::Index>(start) + n_r > readings.size())
        throw input_error("In kstat::compose_metapulse: window [" + std::to_string(start) + ", " +
                          std::to_string(start + n_r) + ") exceeds " + std::to_string(readings.size()) +
                          " readings");
    return readings.segment(start, n_r).sum();
}

Sample build_ng_dataset(const std::vector<PreparationRecord>& plus,
                        const std::vector<PreparationRecord>& minus, int n_r, std::uint64_t seed,
                        double p_plus) {
    if (plus.empty() || minus.empty())
        throw input_error("In kstat::build_ng_dataset: both preparation pools must be non-empty");
    if (!(p_plus >= 0 && p_plus <= 1))
        throw input_error("In kstat::build_ng_dataset: p_plus must lie in [0,1]");

    struct Cursor {
        const std::vector<PreparationRecord>* pool;
        std::size_t record = 0;
        int window = 0;

        bool next(int n_r, double& out) {
            while (record < pool->size()) {
                const auto& readings = (*pool)[record].readings;
                const int windows = static_cast<int>(readings.size()) / n_r;
                if (window < windows) {
                    out = compose_metapulse(readings, n_r, window * n_r);
                    ++window;
                    return true;
                }
                ++record;
                window = 0;
            }
            return false;
        }
    };

    Cursor from_plus{&plus}, from_minus{&minus};
    auto engine = make_engine(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    std::vector<double> values;
    values.reserve(plus.size() * (plus.front().readings.size() / n_r) +
                   minus.size() * (minus.front().readings.size() / n_r));
    for (;;) {
        Cursor& cursor = uniform(engine) < p_plus ? from_plus : from_minus;
        double m = 0.0;
        if (!cursor.next(n_r, m)) break;  // chosen pool exhausted
        values.push_back(m);
    }
    return Eigen::Map<const Sample>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// --- CSV I/O ---------------------------------------------------------------

void write_records_csv(std::ostream& os, const std::vector<PreparationRecord>& records,
                       const std::vector<std::string>& meta) {
    for (const auto& line : meta) os << "# " << line << '\n';
    const Eigen::Index pulses = records.empty() ? 0 : records.front().readings.size();
    os << "label,true_fz,seed";
    for (Eigen::Index i = 1; i <= pulses; ++i) os << ",m_" << i;
    os << '\n';
    for (const auto& rec : records) {
        if (rec.readings.size() != pulses)
            throw input_error("In kstat::write_records_csv: records differ in reading count");
        os << rec.label << ',';
        if (std::isfinite(rec.true_fz)) os << format_full(rec.true_fz);
        os << ',';
        if (rec.seed) os << *rec.seed;
        for (Eigen::Index i = 0; i < pulses; ++i) os << ',' << format_full(rec.readings[i]);
        os << '\n';
    }
}

void write_records_csv(const std::string& path, const std::vector<PreparationRecord>& records,
                       const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) { write_records_csv(os, records, meta); });
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type begin = 0;
    for (;;) {
        const auto comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(begin));
            return fields;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

double parse_reading(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw input_error("In kstat::ingest: malformed reading '" + field + "' at line " +
                          std::to_string(line_no));
    return value;
}

}  // namespace

std::vector<PreparationRecord> ingest_stream(std::istream& is, const IngestOptions& options) {
    std::vector<PreparationRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    Eigen::Index pulses = -1;

    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line.rfind("label,true_fz,seed", 0) != 0)
                throw input_error("In kstat::ingest: expected header 'label,true_fz,seed,...' at line " +
                                  std::to_string(line_no));
            const auto header_fields = split_csv_row(line);
            if (header_fields.size() > 3) pulses = static_cast<Eigen::Index>(header_fields.size()) - 3;
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_row(line);
        if (fields.size() < 4)
            throw input_error("In kstat::ingest: too few columns at line " + std::to_string(line_no));

        PreparationRecord rec;
        rec.label = fields[0];
        if (!is_known_label(rec.label))
            throw input_error("In kstat::ingest: unknown label '" + rec.label + "' at line " +
                              std::to_string(line_no));
        rec.true_fz = fields[1].empty() ? std::nan("") : parse_reading(fields[1], line_no);
        if (!fields[2].empty()) rec.seed = std::strtoull(fields[2].c_str(), nullptr, 10);

        const Eigen::Index n = static_cast<Eigen::Index>(fields.size()) - 3;
        if (pulses < 0) pulses = n;
        if (n != pulses)
            throw input_error("In kstat::ingest: expected " + std::to_string(pulses) + " readings, found " +
                              std::to_string(n) + " at line " + std::to_string(line_no));
        rec.readings.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
            rec.readings[i] = parse_reading(fields[static_cast<std::size_t>(i) + 3], line_no);
        records.push_back(std::move(rec));
    }
    if (!header_seen) throw input_error("In kstat::ingest: empty file");

    if (options.subtract_baseline) {
        bool have_baseline = false;
        double baseline = 0.0;
        for (auto& rec : records) {
            if (is_baseline_provider(rec.label)) {
                baseline = rec.readings.size() > 0 ? rec.readings.mean() : 0.0;
                have_baseline = true;
            } else if (have_baseline && rec.label != "atoms") {
                rec.readings -= baseline;
            }
        }
    }
    return records;
}

std::vector<PreparationRecord> ingest(const std::string& path, const IngestOptions& options) {
    std::ifstream is(path);
    if (!is) throw input_error("In kstat::ingest: cannot open '" + path + "'");
    return ingest_stream(is, options);
}

}  // namespace kstat

/*
 * src/io.cpp
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

#include "kstat/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "kstat/errors.hpp"

namespace kstat {

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw input_error("In kstat::write_file_atomically: cannot create '" + tmp.string() + "'");
        writer(os);
        if (!os) throw input_error("In kstat::write_file_atomically: write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw input_error("In kstat::write_file_atomically: cannot rename onto '" + path + "': " +
                          ec.message());
}

Sample read_sample_stream(std::istream& is) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || ptr != token.data() + token.size())
                throw input_error("In kstat::read_sample: malformed value '" + token + "' at line " +
                                  std::to_string(line_no));
            values.push_back(v);
        }
    }
    return Eigen::Map<const Sample>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Sample read_sample(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("In kstat::read_sample: cannot open '" + path + "'");
    return read_sample_stream(is);
}

void write_sample(const std::string& path, const Sample& sample, const std::vector<std::string>& meta) {
    write_file_atomically(path, [&](std::ostream& os) {
        for (const auto& line : meta) os << "# " << line << '\n';
        for (Eigen::Index i = 0; i < sample.size(); ++i) os << format_full(sample[i]) << '\n';
    });
}

}  // namespace kstat

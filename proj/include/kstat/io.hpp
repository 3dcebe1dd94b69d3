/*
 * include/kstat/io.hpp
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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kstat/common.hpp"

namespace kstat {

/// Shortest decimal form that round-trips a double exactly (17
/// significant digits).
std::string format_full(double value);

/// Write via a temporary file in the same directory, then rename, so
/// readers never observe a half-written file.
void write_file_atomically(const std::string& path, const std::function<void(std::ostream&)>& writer);

/// Whitespace/newline-separated readings; '#' starts a comment line.
/// Malformed tokens are reported with their line number.
Sample read_sample(const std::string& path);
Sample read_sample_stream(std::istream& is);

/// One reading per line after '#' metadata comments.
void write_sample(const std::string& path, const Sample& sample,
                  const std::vector<std::string>& meta = {});

}  // namespace kstat

/*
 * include/kstat/errors.hpp
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

#include <stdexcept>
#include <string>

namespace kstat {

/// Malformed or out-of-contract input (bad file, bad parameter, window
/// out of range, ...). The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Statistically degenerate request: no dispersion in the sample, zero
/// variance across realizations, too few readings left after splitting a
/// budget. The CLI maps this to exit code 3.
struct degenerate_error : std::runtime_error {
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kstat

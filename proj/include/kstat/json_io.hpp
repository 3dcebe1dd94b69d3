/*
 * include/kstat/json_io.hpp
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

#include <string>

#include <json.hpp>

#include "kstat/budget.hpp"
#include "kstat/inference.hpp"
#include "kstat/kstatistics.hpp"
#include "kstat/models.hpp"
#include "kstat/qnd.hpp"

namespace kstat {

// Model spec: {"variant": "gaussian"|"displaced_mixture"|"fock_mixture",
//              "params": {...}, "readout_var": v}
void to_json(nlohmann::json& j, const DistModel& m);
void from_json(const nlohmann::json& j, DistModel& m);

void to_json(nlohmann::json& j, const MeasurementConfig& cfg);
void from_json(const nlohmann::json& j, MeasurementConfig& cfg);

void to_json(nlohmann::json& j, const TestResult& r);
void to_json(nlohmann::json& j, const Estimate& e);
void to_json(nlohmann::json& j, const BudgetResult& r);

DistModel load_model(const std::string& path);
MeasurementConfig load_config(const std::string& path);

}  // namespace kstat

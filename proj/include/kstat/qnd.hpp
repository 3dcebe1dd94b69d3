/*
 * include/kstat/qnd.hpp
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kstat/common.hpp"

namespace kstat {

/// Parameters of the non-destructive Faraday-rotation measurement chain.
///
/// A prepared collective spin F_z is probed by pulses of N_L photons;
/// each pulse yields a reading m_i = G*F_z + xi_i with shot-noise
/// xi_i ~ N(0, 1/N_L). Summing n_r consecutive readings into a metapulse
/// M gives
///     var(M) = sigma_a2 * n_a_frac^2 * n_r^2  +  n_r / n_l
/// (atomic noise grows as n_r^2 because the same F_z is re-read, readout
/// shot noise only as n_r). sigma_a2 is the calibrated atomic reading
/// variance at n_a = n_a_max, n_r = 1.
struct MeasurementConfig {
    double g = 6.9185e-8;       ///< coupling, radians of rotation per spin
    double n_l = 3.7e6;         ///< photons per probe pulse
    double n_a = 1e6;           ///< atom number
    double n_a_max = 1e6;       ///< reference atom number for sigma_a2
    double sigma_a2 = 3.191e-9; ///< atomic reading variance at n_a' = 1, n_r = 1
    int n_r = 1;                ///< readings per metapulse
    int pulses = 100;           ///< probe pulses per preparation

    double atom_fraction() const { return n_a / n_a_max; }
    double readout_var() const { return static_cast<double>(n_r) / n_l; }
};

/// Measured readout-to-atomic noise ratio of the reference apparatus at
/// n_r = 1, n_a' = 1.
inline constexpr double readout_to_atomic_ratio = 84.7;

/// The reference operating point: N_L = 3.7e6 photons, 1e6 atoms,
/// 100 pulses per preparation, sigma_a2 fixed by the measured
/// readout-to-atomic ratio, and G derived from the thermal-state variance
/// so that simulated records reproduce the var(M) decomposition exactly
/// at n_a' = 1.
MeasurementConfig default_config();

/// Throws input_error on out-of-range parameters.
void validate(const MeasurementConfig& cfg);

/// Thermal-state spin variance var(F_z) = 2 N_A / 3 (spins^2).
double thermal_variance(double n_a);

/// sigma_M^2 = sigma_a2 * n_a'^2 * n_r^2 + n_r/n_l, in reading^2 units.
double metapulse_variance(const MeasurementConfig& cfg);

/// One prepared state and its per-pulse probe readings.
struct PreparationRecord {
    std::string label;           ///< one of: baseline, DM[+], DM[-], DM[0], atoms
    double true_fz = 0.0;        ///< underlying spin value (NaN for real data)
    std::optional<std::uint64_t> seed;
    Sample readings;
};

/// Labels accepted in record files.
bool is_known_label(const std::string& label);

/// Simulate one preparation displaced to <F_z> = alpha (spins):
/// F_z ~ N(alpha, 2 N_A/3) drawn once (the probe is non-destructive),
/// then cfg.pulses readings G*F_z + xi, xi ~ N(0, 1/N_L). Deterministic
/// per seed. The label defaults to DM[+] / DM[-] / DM[0] by sign of alpha.
PreparationRecord simulate_preparation(const MeasurementConfig& cfg, double alpha, std::uint64_t seed,
                                       std::string label = {});

/// A batch of preparations with per-record derived seeds.
std::vector<PreparationRecord> simulate_preparations(const MeasurementConfig& cfg, double alpha,
                                                     int count, std::uint64_t seed,
                                                     const std::string& label = {});

/// Metapulse reading M = sum of n_r consecutive readings starting at `start`.
double compose_metapulse(const Sample& readings, int n_r, int start);

/// Compose a sample of metapulses distributed as the equal-weight mixture
/// of the two displaced preparations: each metapulse is built entirely
/// from one pool, the pool chosen per metapulse by a Bernoulli(p_plus)
/// coin. Windows are disjoint consecutive blocks within a record and are
/// never reused; composition stops when the chosen pool runs dry.
Sample build_ng_dataset(const std::vector<PreparationRecord>& plus,
                        const std::vector<PreparationRecord>& minus, int n_r, std::uint64_t seed,
                        double p_plus = 0.5);

/// CSV export: header row `label,true_fz,seed,m_1,...,m_K` after '#'
/// metadata comment lines; values at 17 significant digits so the
/// export/ingest pair round-trips bit-exactly.
void write_records_csv(std::ostream& os, const std::vector<PreparationRecord>& records,
                       const std::vector<std::string>& meta = {});
void write_records_csv(const std::string& path, const std::vector<PreparationRecord>& records,
                       const std::vector<std::string>& meta = {});

struct IngestOptions {
    /// Subtract the per-block baseline mean from displaced records. A
    /// block starts at each `baseline` or `DM[0]` record (drift
    /// correction); records before the first baseline pass through.
    bool subtract_baseline = true;
};

/// Parse a record CSV file. Malformed rows and unknown labels are
/// reported with their line number.
std::vector<PreparationRecord> ingest(const std::string& path, const IngestOptions& options = {});
std::vector<PreparationRecord> ingest_stream(std::istream& is, const IngestOptions& options = {});

}  // namespace kstat

// SPDX-License-Identifier: Apache-2.0
//
// risim: simulation and analysis toolkit for RIS-assisted MIMO links
// Copyright (C) 2026 The risim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef risim_io_H
#define risim_io_H

#include "risim/channel.hpp"
#include "risim/metrics.hpp"
#include "risim/pso.hpp"

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace risim
{
    inline constexpr int scenario_schema_version = 1;

    // Scenario plus the beam-search settings stored in the same file
    struct ScenarioFile
    {
        Scenario scenario;
        SwarmConfig swarm;
    };

    // Parses the sectioned key = value scenario format. Unknown keys, missing required
    // keys and out-of-range values are collected and reported together in one ValidationError.
    // Applied defaults are echoed to "log" when given.
    ScenarioFile parse_scenario(std::string_view text, std::ostream *log = nullptr);
    ScenarioFile load_scenario_file(const std::filesystem::path &path, std::ostream *log = nullptr);
    Scenario load_scenario(const std::filesystem::path &path, std::ostream *log = nullptr);

    // Canonical text form: every key present, fixed order, shortest round-trip numbers
    std::string format_scenario(const ScenarioFile &file);
    void save_scenario(const ScenarioFile &file, const std::filesystem::path &path);

    // Sweep CSV with header "freq_hz,rx,tx,re,im", rows ordered by frequency, rx, tx
    std::string format_sweep_csv(const FrequencySweep &sweep);
    FrequencySweep parse_sweep_csv(std::string_view text);
    void export_sweep(const FrequencySweep &sweep, const std::filesystem::path &path);

    // Reference trace CSV with header "freq_hz,re,im"
    struct ReferenceTrace
    {
        std::vector<double> frequencies;
        std::vector<std::complex<double>> values;
    };

    std::string format_reference_csv(const ReferenceTrace &trace);
    ReferenceTrace parse_reference_csv(std::string_view text);

    // H_cal(f) = H_raw(f) / R(f)
    FrequencySweep deembed(const FrequencySweep &raw, const ReferenceTrace &reference);

    // Reads a sweep, optionally de-embedding it with a reference trace file
    FrequencySweep ingest_sweep(const std::filesystem::path &path, const std::optional<std::filesystem::path> &reference = std::nullopt);

    // Flat "key = value" report and the plot-ready curves
    std::string format_report(const MetricsReport &report);
    std::string format_capacity_csv(const CapacityCurve &curve);   // power_dbm,capacity_bps
    std::string format_frequency_csv(const MetricsReport &report); // freq_hz,gain_db,erank

    // Beam-search run log "iteration,gbest_gain_db,evaluations" and result file
    std::string format_trace_csv(const OptimizationResult &result, std::size_t swarm_size);
    std::string format_result(const OptimizationResult &result);

    // Shortest representation that parses back to the identical double
    std::string format_double(double v);
    double parse_double(std::string_view s);

    std::string read_text_file(const std::filesystem::path &path);

    // Writes through a temporary file in the same directory followed by a rename
    void write_text_atomic(const std::filesystem::path &path, std::string_view content);
}

#endif

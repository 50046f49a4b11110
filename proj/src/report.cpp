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

#include "risim/io.hpp"
#include "risim/error.hpp"

#include <sstream>

namespace risim
{
    namespace
    {
        std::string db_text(double lin)
        {
            return lin > 0.0 ? format_double(lin2db(lin)) : std::string("-inf");
        }
    }

    std::string format_report(const MetricsReport &r)
    {
        std::ostringstream os;
        os << "label = " << r.label << '\n';
        os << "frequency_points = " << r.frequencies.size() << '\n';
        if (!r.frequencies.empty())
        {
            os << "freq_lo_hz = " << format_double(r.frequencies.front()) << '\n';
            os << "freq_hi_hz = " << format_double(r.frequencies.back()) << '\n';
        }
        os << "band_gain = " << format_double(r.band_gain) << '\n';
        os << "band_gain_db = " << db_text(r.band_gain) << '\n';
        os << "mean_effective_rank = " << format_double(r.mean_effective_rank) << '\n';
        os << "capacity_bandwidth_hz = " << format_double(r.capacity.bandwidth_hz) << '\n';
        if (r.tx_power_dbm)
            os << "tx_power_dbm = " << format_double(*r.tx_power_dbm) << '\n';
        if (r.capacity_at_tx_power_bps)
            os << "capacity_at_tx_power_bps = " << format_double(*r.capacity_at_tx_power_bps) << '\n';
        return os.str();
    }

    std::string format_capacity_csv(const CapacityCurve &curve)
    {
        std::string out = "power_dbm,capacity_bps\n";
        for (std::size_t i = 0; i < curve.tx_powers_dbm.size(); ++i)
            out += format_double(curve.tx_powers_dbm[i]) + ',' + format_double(curve.capacities_bps.at(i)) + '\n';
        return out;
    }

    std::string format_frequency_csv(const MetricsReport &r)
    {
        std::string out = "freq_hz,gain_db,erank\n";
        for (std::size_t i = 0; i < r.frequencies.size(); ++i)
            out += format_double(r.frequencies[i]) + ',' + db_text(r.gains.at(i)) + ',' + format_double(r.eranks.at(i)) + '\n';
        return out;
    }

    std::string format_trace_csv(const OptimizationResult &result, std::size_t swarm_size)
    {
        std::string out = "iteration,gbest_gain_db,evaluations\n";
        for (std::size_t i = 0; i < result.fitness_trace.size(); ++i)
            out += std::to_string(i) + ',' + db_text(result.fitness_trace[i]) + ',' + std::to_string(swarm_size * (i + 1)) + '\n';
        return out;
    }

    std::string format_result(const OptimizationResult &result)
    {
        const auto &p = result.best_params;
        std::ostringstream os;
        os << "best_fitness = " << format_double(result.best_fitness) << '\n';
        os << "best_fitness_db = " << db_text(result.best_fitness) << '\n';
        os << "evaluations = " << result.evaluations << '\n';
        os << "iterations = " << (result.fitness_trace.empty() ? 0 : result.fitness_trace.size() - 1) << '\n';
        os << "rx_r_m = " << format_double(p.rx_coord.r) << '\n';
        os << "rx_theta_deg = " << format_double(rad2deg(p.rx_coord.theta)) << '\n';
        os << "rx_phi_deg = " << format_double(rad2deg(p.rx_coord.phi)) << '\n';
        os << "flip = " << (p.flip ? "true" : "false") << '\n';
        os << "config_rows = " << result.best_config.rows << '\n';
        os << "config_cols = " << result.best_config.cols << '\n';
        os << "\n# RIS configuration, polarization 0 then 1\n";
        os << format_config(result.best_config);
        return os.str();
    }
}

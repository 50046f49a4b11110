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

#ifndef risim_channel_H
#define risim_channel_H

#include "risim/geometry.hpp"
#include "risim/ris.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risim
{
    // Nr x Nt complex voltage gains at one frequency
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;
        double frequency = 0.0; // [Hz]

        Eigen::Index rx_count() const { return entries.rows(); }
        Eigen::Index tx_count() const { return entries.cols(); }
        bool is_finite() const { return entries.allFinite(); }
    };

    // Channel matrices over an ascending frequency grid
    struct FrequencySweep
    {
        std::vector<double> frequencies;
        std::vector<ChannelMatrix> matrices;
        std::string band_label;

        std::size_t size() const { return frequencies.size(); }
        bool empty() const { return frequencies.empty(); }

        // Throws ValidationError on a non-ascending grid or mixed dimensions
        void validate() const;
    };

    struct BandGrid
    {
        double lo_hz = 3.59e9;
        double hi_hz = 3.64e9;
        std::size_t points = 11;

        double center() const { return 0.5 * (lo_hz + hi_hz); }
        double bandwidth() const { return hi_hz - lo_hz; }
        std::vector<double> frequencies() const;
    };

    struct ScatterSpec
    {
        std::size_t cluster_count = 0;
        std::vector<double> power_db;    // Per cluster, relative to the received direct-path power
        std::vector<double> delay_s;     // Per cluster base delay
        double delay_spread_s = 20e-9;   // Mean excess delay of the rays within a cluster
        std::size_t rays_per_cluster = 8;
        std::uint64_t seed = 1;
    };

    struct Propagation
    {
        bool direct_enabled = true;
        double blockage_db = 0.0;
        ScatterSpec scatter{};
    };

    struct NoiseSpec
    {
        double psd_dbm_hz = -174.0;
        double noise_figure_db = 5.0;

        // Noise power per receive branch in W for the given bandwidth
        double power_w(double bandwidth_hz) const;
    };

    struct Scenario
    {
        AntennaArray tx_array;
        AntennaArray rx_array;
        RisPanel ris;
        double design_frequency = 0.0; // Frequency used to synthesize RIS profiles, 0 = band center
        Propagation propagation;
        BandGrid band;
        NoiseSpec noise;

        double focus_frequency() const { return design_frequency > 0.0 ? design_frequency : band.center(); }

        // Throws ValidationError listing the first violated invariant
        void validate() const;
    };

    // Attenuated line-of-sight path between the arrays (co-polarized pairs only)
    ChannelMatrix direct_channel(const Scenario &scn, double frequency);

    // Tx -> RIS -> Rx cascade for the given configuration (co-polarized pairs only)
    ChannelMatrix ris_cascade(const Scenario &scn, const RisConfig &config, double frequency);

    // Sum of clustered complex-Gaussian rays; deterministic given the scatter seed
    ChannelMatrix scatter_channel(const Scenario &scn, double frequency);

    // Mean co-polarized power of the received direct path at band center (reference for cluster powers)
    double direct_reference_power(const Scenario &scn);

    // Longest deterministic propagation path (direct and via any RIS element) [m]
    double max_path_length(const Scenario &scn);

    // Largest grid spacing for which no direct or RIS path advances its phase by pi or more
    // between adjacent frequencies: c / (2 d_max). Scatter rays are not included.
    double phase_continuous_spacing(const Scenario &scn);

    // H = direct + scatter (+ RIS cascade when a configuration is given) over the band grid
    FrequencySweep synthesize(const Scenario &scn, const std::optional<RisConfig> &config);

    // Element-level cascade coefficients for a fixed scenario and frequency grid. Evaluating a
    // configuration reduces to masked sums over these tables, which is what the beam search uses.
    class CascadeTable
    {
    public:
        CascadeTable(const Scenario &scn, std::vector<double> frequencies);

        const std::vector<double> &frequencies() const { return frequencies_; }

        // RIS cascade matrices for "config" at every table frequency
        std::vector<ChannelMatrix> evaluate(const RisConfig &config) const;

        // Adds the cascade for "config" to "base" (same grid and dimensions), returns the band
        // mean of Tr(H H^H); used as the beam-search fitness
        double band_gain_with(const RisConfig &config, const std::vector<ChannelMatrix> &base) const;

    private:
        struct Path
        {
            Eigen::Index rx, tx;
            int polarization;
            std::vector<double> re, im; // Per element coefficient without the reflection factor
        };

        std::complex<double> path_value(const Path &path, const RisConfig &config) const;

        std::vector<double> frequencies_;
        Eigen::Index n_rx_ = 0, n_tx_ = 0;
        std::array<std::complex<double>, 2> gamma0_{}, gamma1_{};
        std::vector<std::vector<Path>> paths_; // [frequency][co-polarized pair]
    };
}

#endif

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

#ifndef risim_metrics_H
#define risim_metrics_H

#include "risim/channel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace risim
{
    // Descending, non-negative singular values
    struct SingularSpectrum
    {
        std::vector<double> values;
    };

    SingularSpectrum singular_spectrum(const Eigen::MatrixXcd &h);

    // Tr(H H^H)
    double channel_gain(const ChannelMatrix &h);
    double channel_gain(const Eigen::MatrixXcd &h);

    // Arithmetic mean of channel_gain over the sweep
    double band_gain(const FrequencySweep &sweep);

    // exp of the Shannon entropy of the l1-normalized singular values
    double effective_rank(const ChannelMatrix &h);
    double effective_rank(const Eigen::MatrixXcd &h);
    double mean_effective_rank(const FrequencySweep &sweep);

    // Result of a water-filling allocation over the eigenmodes of H
    struct WaterFilling
    {
        double capacity_bps = 0.0;
        double water_level = 0.0;        // mu [W]
        std::vector<double> mode_powers; // Per singular value, descending order [W]
    };

    WaterFilling waterfilling(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz);

    // Capacity with the optimal (water-filling) transmit covariance [bit/s]
    double waterfilling_capacity(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz);

    // Capacity with power spread equally over the Nt transmit ports [bit/s]
    double equal_power_capacity(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz);

    // Transmit power [dBm] allowed by a per-5 MHz EIRP limit over "bandwidth_hz"
    double eirp_total_dbm(double eirp_dbm_per_5mhz, double bandwidth_hz);
    double eirp_to_tx_power(double eirp_dbm_per_5mhz, double bandwidth_hz, double antenna_gain_dbi);

    double dbm_to_watt(double dbm);

    struct CapacityCurve
    {
        std::vector<double> tx_powers_dbm;
        std::vector<double> capacities_bps;
        double bandwidth_hz = 0.0;
    };

    // Band capacity versus transmit power: the mean over the grid of the per-frequency
    // water-filling capacity with the full power budget and the full-band noise power
    CapacityCurve capacity_curve(const FrequencySweep &sweep, const std::vector<double> &tx_powers_dbm,
                                 double noise_psd_dbm_hz, double noise_figure_db, double bandwidth_hz);

    double band_capacity(const FrequencySweep &sweep, double tx_power_dbm, double noise_psd_dbm_hz,
                         double noise_figure_db, double bandwidth_hz);

    struct MetricsReport
    {
        std::string label;
        std::vector<double> frequencies;
        std::vector<double> gains;  // Linear, per frequency
        std::vector<double> eranks; // Per frequency
        double band_gain = 0.0;
        double mean_effective_rank = 0.0;
        CapacityCurve capacity;
        std::optional<double> tx_power_dbm;
        std::optional<double> capacity_at_tx_power_bps;
    };

    MetricsReport make_report(const FrequencySweep &sweep, const std::string &label, const std::vector<double> &tx_powers_dbm,
                              double noise_psd_dbm_hz, double noise_figure_db, double bandwidth_hz,
                              std::optional<double> tx_power_dbm = std::nullopt);
}

#endif

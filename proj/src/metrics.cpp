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

#include "risim/metrics.hpp"
#include "risim/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace risim
{
    namespace
    {
        // Singular values below this fraction of the largest one count as zero
        constexpr double rank_tolerance = 1e-12;

        void require_nonempty(const FrequencySweep &sweep, const char *what)
        {
            if (sweep.empty())
                throw ValidationError(std::string(what) + " needs a non-empty sweep");
        }
    }

    SingularSpectrum singular_spectrum(const Eigen::MatrixXcd &h)
    {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const auto &sv = svd.singularValues();
        SingularSpectrum s;
        s.values.assign(sv.data(), sv.data() + sv.size());
        std::sort(s.values.begin(), s.values.end(), std::greater<>());
        return s;
    }

    double channel_gain(const Eigen::MatrixXcd &h)
    {
        if (!h.allFinite())
            throw NumericError("channel_gain: matrix is not finite");
        return h.squaredNorm();
    }

    double channel_gain(const ChannelMatrix &h) { return channel_gain(h.entries); }

    double band_gain(const FrequencySweep &sweep)
    {
        require_nonempty(sweep, "band_gain");
        double sum = 0.0;
        for (const auto &m : sweep.matrices)
            sum += channel_gain(m);
        return sum / static_cast<double>(sweep.matrices.size());
    }

    double effective_rank(const Eigen::MatrixXcd &h)
    {
        const auto s = singular_spectrum(h);
        if (s.values.empty() || !(s.values.front() > 0.0))
            throw NumericError("effective_rank: all-zero matrix");

        const double cutoff = s.values.front() * rank_tolerance;
        double l1 = 0.0;
        for (double v : s.values)
            if (v >= cutoff)
                l1 += v;

        // Base 2 keeps uniform spectra of power-of-two size exact
        double entropy_bits = 0.0;
        for (double v : s.values)
        {
            if (v < cutoff)
                continue;
            const double p = v / l1;
            entropy_bits -= p * std::log2(p);
        }
        const double erank = std::exp2(entropy_bits);
        return std::clamp(erank, 1.0, static_cast<double>(s.values.size()));
    }

    double effective_rank(const ChannelMatrix &h) { return effective_rank(h.entries); }

    double mean_effective_rank(const FrequencySweep &sweep)
    {
        require_nonempty(sweep, "mean_effective_rank");
        double sum = 0.0;
        for (const auto &m : sweep.matrices)
            sum += effective_rank(m);
        return sum / static_cast<double>(sweep.matrices.size());
    }

    WaterFilling waterfilling(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz)
    {
        if (!(total_power_w > 0.0) || !(noise_power_w > 0.0))
            throw ValidationError("waterfilling needs positive transmit and noise power");

        const auto s = singular_spectrum(h);
        WaterFilling out;
        out.mode_powers.assign(s.values.size(), 0.0);
        if (s.values.empty() || !(s.values.front() > 0.0))
            return out;

        // Noise-to-gain floor of each usable mode, ascending
        std::vector<double> floor;
        for (double v : s.values)
            if (v > s.values.front() * rank_tolerance)
                floor.push_back(noise_power_w / (v * v));

        auto allocated = [&](double mu)
        {
            double sum = 0.0;
            for (double f : floor)
                sum += std::max(0.0, mu - f);
            return sum;
        };

        // Bisection for the water level
        double lo = 0.0, hi = total_power_w + floor.back();
        while (hi - lo > 1e-12 * hi)
        {
            const double mid = 0.5 * (lo + hi);
            (allocated(mid) < total_power_w ? lo : hi) = mid;
        }

        // Closed form on the active set found by bisection, pruned until consistent
        std::size_t active = static_cast<std::size_t>(std::count_if(floor.begin(), floor.end(), [&](double f)
                                                                    { return f < hi; }));
        active = std::max<std::size_t>(active, 1);
        double mu = 0.0;
        while (true)
        {
            double sum = total_power_w;
            for (std::size_t i = 0; i < active; ++i)
                sum += floor[i];
            mu = sum / static_cast<double>(active);
            if (active == 1 || floor[active - 1] < mu)
                break;
            --active;
        }

        out.water_level = mu;
        for (std::size_t i = 0; i < active; ++i)
        {
            const double p = std::max(0.0, mu - floor[i]);
            out.mode_powers[i] = p;
            out.capacity_bps += bandwidth_hz * std::log2(1.0 + p / floor[i]);
        }
        return out;
    }

    double waterfilling_capacity(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz)
    {
        return waterfilling(h, total_power_w, noise_power_w, bandwidth_hz).capacity_bps;
    }

    double equal_power_capacity(const Eigen::MatrixXcd &h, double total_power_w, double noise_power_w, double bandwidth_hz)
    {
        if (!(total_power_w > 0.0) || !(noise_power_w > 0.0))
            throw ValidationError("equal_power_capacity needs positive transmit and noise power");
        const double per_port = total_power_w / static_cast<double>(h.cols());
        double c = 0.0;
        for (double v : singular_spectrum(h).values)
            c += bandwidth_hz * std::log2(1.0 + per_port * v * v / noise_power_w);
        return c;
    }

    double eirp_total_dbm(double eirp_dbm_per_5mhz, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw ValidationError("EIRP conversion needs a positive bandwidth");
        return eirp_dbm_per_5mhz + 10.0 * std::log10(bandwidth_hz / 5e6);
    }

    double eirp_to_tx_power(double eirp_dbm_per_5mhz, double bandwidth_hz, double antenna_gain_dbi)
    {
        return eirp_total_dbm(eirp_dbm_per_5mhz, bandwidth_hz) - antenna_gain_dbi;
    }

    double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

    double band_capacity(const FrequencySweep &sweep, double tx_power_dbm, double noise_psd_dbm_hz,
                         double noise_figure_db, double bandwidth_hz)
    {
        require_nonempty(sweep, "band_capacity");
        const double noise = NoiseSpec{noise_psd_dbm_hz, noise_figure_db}.power_w(bandwidth_hz);
        const double p = dbm_to_watt(tx_power_dbm);
        double sum = 0.0;
        for (const auto &m : sweep.matrices)
            sum += waterfilling_capacity(m.entries, p, noise, bandwidth_hz);
        return sum / static_cast<double>(sweep.matrices.size());
    }

    CapacityCurve capacity_curve(const FrequencySweep &sweep, const std::vector<double> &tx_powers_dbm,
                                 double noise_psd_dbm_hz, double noise_figure_db, double bandwidth_hz)
    {
        CapacityCurve c;
        c.bandwidth_hz = bandwidth_hz;
        c.tx_powers_dbm = tx_powers_dbm;
        for (double p : tx_powers_dbm)
            c.capacities_bps.push_back(band_capacity(sweep, p, noise_psd_dbm_hz, noise_figure_db, bandwidth_hz));
        return c;
    }

    MetricsReport make_report(const FrequencySweep &sweep, const std::string &label, const std::vector<double> &tx_powers_dbm,
                              double noise_psd_dbm_hz, double noise_figure_db, double bandwidth_hz,
                              std::optional<double> tx_power_dbm)
    {
        require_nonempty(sweep, "make_report");
        MetricsReport r;
        r.label = label;
        r.frequencies = sweep.frequencies;
        for (const auto &m : sweep.matrices)
        {
            r.gains.push_back(channel_gain(m));
            r.eranks.push_back(effective_rank(m));
        }
        r.band_gain = band_gain(sweep);
        r.mean_effective_rank = mean_effective_rank(sweep);
        r.capacity = capacity_curve(sweep, tx_powers_dbm, noise_psd_dbm_hz, noise_figure_db, bandwidth_hz);
        if (tx_power_dbm)
        {
            r.tx_power_dbm = tx_power_dbm;
            r.capacity_at_tx_power_bps = band_capacity(sweep, *tx_power_dbm, noise_psd_dbm_hz, noise_figure_db, bandwidth_hz);
        }
        return r;
    }
}

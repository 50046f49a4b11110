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

#include "risim/channel.hpp"
#include "risim/error.hpp"
#include "risim/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace risim
{
    using cd = std::complex<double>;

    void FrequencySweep::validate() const
    {
        if (frequencies.size() != matrices.size())
            throw ValidationError("sweep has " + std::to_string(frequencies.size()) + " frequencies but " +
                                  std::to_string(matrices.size()) + " matrices");
        for (std::size_t i = 1; i < frequencies.size(); ++i)
            if (!(frequencies[i] > frequencies[i - 1]))
                throw ValidationError("sweep frequencies must be strictly ascending");
        for (std::size_t i = 0; i < matrices.size(); ++i)
        {
            const auto &m = matrices[i];
            if (m.rx_count() < 1 || m.tx_count() < 1)
                throw ValidationError("channel matrices need at least one row and column");
            if (m.rx_count() != matrices.front().rx_count() || m.tx_count() != matrices.front().tx_count())
                throw ValidationError("sweep matrices differ in dimensions");
            if (!m.is_finite())
                throw ValidationError("sweep contains non-finite channel entries");
            if (m.frequency != frequencies[i])
                throw ValidationError("sweep matrix frequency does not match the grid");
        }
    }

    std::vector<double> BandGrid::frequencies() const
    {
        std::vector<double> f(points);
        if (points == 1)
        {
            f[0] = center();
            return f;
        }
        const double step = (hi_hz - lo_hz) / static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i)
            f[i] = lo_hz + step * static_cast<double>(i);
        f.back() = hi_hz;
        return f;
    }

    double NoiseSpec::power_w(double bandwidth_hz) const
    {
        return std::pow(10.0, (psd_dbm_hz + noise_figure_db - 30.0) / 10.0) * bandwidth_hz;
    }

    void Scenario::validate() const
    {
        tx_array.validate();
        rx_array.validate();
        ris.validate();
        if (!(band.lo_hz > 0.0) || !(band.lo_hz < band.hi_hz))
            throw ValidationError("band must satisfy 0 < freq_lo_hz < freq_hi_hz");
        if (band.points < 1)
            throw ValidationError("band needs at least one frequency point");
        if (!(design_frequency >= 0.0))
            throw ValidationError("design frequency must be >= 0");
        if (!std::isfinite(propagation.blockage_db))
            throw ValidationError("blockage must be finite");
        const auto &s = propagation.scatter;
        if (s.power_db.size() != s.cluster_count || s.delay_s.size() != s.cluster_count)
            throw ValidationError("scatter lists must have one entry per cluster");
        for (std::size_t c = 0; c < s.cluster_count; ++c)
        {
            if (!std::isfinite(s.power_db[c]))
                throw ValidationError("cluster powers must be finite");
            if (!(s.delay_s[c] >= 0.0))
                throw ValidationError("cluster delays must be >= 0");
        }
        if (!(s.delay_spread_s >= 0.0))
            throw ValidationError("cluster delay spread must be >= 0");
        if (s.cluster_count > 0 && s.rays_per_cluster < 1)
            throw ValidationError("clusters need at least one ray");
    }

    namespace
    {
        double wavenumber(double f) { return 2.0 * std::numbers::pi * f / speed_of_light; }

        bool co_polarized(const Scenario &scn, Eigen::Index rx, Eigen::Index tx)
        {
            return scn.rx_array.polarizations[static_cast<std::size_t>(rx)] ==
                   scn.tx_array.polarizations[static_cast<std::size_t>(tx)];
        }

        struct ScatterRay
        {
            Eigen::MatrixXcd gains;
            double delay;
        };

        std::vector<ScatterRay> realize_scatter(const Scenario &scn)
        {
            const auto &s = scn.propagation.scatter;
            std::vector<ScatterRay> rays;
            if (s.cluster_count == 0)
                return rays;

            const double p_ref = direct_reference_power(scn);
            const auto n_rx = static_cast<Eigen::Index>(scn.rx_array.size());
            const auto n_tx = static_cast<Eigen::Index>(scn.tx_array.size());

            for (std::size_t c = 0; c < s.cluster_count; ++c)
            {
                // Independent substream per cluster
                std::seed_seq seq{static_cast<std::uint32_t>(s.seed & 0xffffffffu), static_cast<std::uint32_t>(s.seed >> 32),
                                  static_cast<std::uint32_t>(c)};
                std::mt19937_64 rng(seq);
                std::normal_distribution<double> normal(0.0, 1.0);
                std::exponential_distribution<double> excess(1.0);

                const double amp = std::sqrt(p_ref * db2lin(s.power_db[c]) / static_cast<double>(s.rays_per_cluster) / 2.0);
                for (std::size_t r = 0; r < s.rays_per_cluster; ++r)
                {
                    ScatterRay ray{Eigen::MatrixXcd(n_rx, n_tx), 0.0};
                    for (Eigen::Index j = 0; j < n_tx; ++j)
                        for (Eigen::Index i = 0; i < n_rx; ++i)
                        {
                            const double re = normal(rng);
                            const double im = normal(rng);
                            ray.gains(i, j) = cd(amp * re, amp * im);
                        }
                    ray.delay = s.delay_s[c] + s.delay_spread_s * excess(rng);
                    rays.push_back(std::move(ray));
                }
            }
            return rays;
        }

        Eigen::MatrixXcd scatter_at(const std::vector<ScatterRay> &rays, Eigen::Index n_rx, Eigen::Index n_tx, double f)
        {
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_rx, n_tx);
            for (const auto &ray : rays)
                h += ray.gains * std::polar(1.0, -2.0 * std::numbers::pi * f * ray.delay);
            return h;
        }

        // Per element cascade coefficient without the reflection factor
        cd cascade_coefficient(const Scenario &scn, Eigen::Index rx, Eigen::Index tx, const Vec3 &element, double f)
        {
            const Vec3 t = scn.tx_array.element_position(static_cast<std::size_t>(tx));
            const Vec3 r = scn.rx_array.element_position(static_cast<std::size_t>(rx));
            const Vec3 to_tx = t - element, to_rx = r - element;
            const double d1 = to_tx.norm(), d2 = to_rx.norm();
            const Vec3 n = scn.ris.normal();
            const double cos_in = to_tx.dot(n) / d1, cos_out = to_rx.dot(n) / d2;
            if (cos_in <= 0.0 || cos_out <= 0.0)
                return 0.0;
            const double q = scn.ris.element_exponent;
            const double a = q == 1.0 ? cos_in * cos_out : std::pow(cos_in * cos_out, q);
            const double g_tx = pattern_gain(scn.tx_array, static_cast<std::size_t>(tx), (to_tx / -d1));
            const double g_rx = pattern_gain(scn.rx_array, static_cast<std::size_t>(rx), (to_rx / -d2));
            const double lambda = speed_of_light / f;
            const double fspl = lambda / (4.0 * std::numbers::pi);
            return std::sqrt(g_tx * g_rx) * fspl * fspl / (d1 * d2) * a * std::polar(1.0, -wavenumber(f) * (d1 + d2));
        }

        void check_config(const Scenario &scn, const RisConfig &config)
        {
            if (!config.matches(scn.ris) || config.bits[0].size() != scn.ris.size() || config.bits[1].size() != scn.ris.size())
                throw ValidationError("RIS configuration dimensions do not match the panel");
        }
    }

    ChannelMatrix direct_channel(const Scenario &scn, double frequency)
    {
        const auto n_rx = static_cast<Eigen::Index>(scn.rx_array.size());
        const auto n_tx = static_cast<Eigen::Index>(scn.tx_array.size());
        const double lambda = speed_of_light / frequency;
        const double k = wavenumber(frequency);
        const double block = std::pow(10.0, -scn.propagation.blockage_db / 20.0);

        ChannelMatrix h{Eigen::MatrixXcd::Zero(n_rx, n_tx), frequency};
        for (Eigen::Index j = 0; j < n_tx; ++j)
            for (Eigen::Index i = 0; i < n_rx; ++i)
            {
                if (!co_polarized(scn, i, j))
                    continue;
                const Vec3 t = scn.tx_array.element_position(static_cast<std::size_t>(j));
                const Vec3 r = scn.rx_array.element_position(static_cast<std::size_t>(i));
                const double d = path_length(t, r);
                const Vec3 dir = (r - t) / d;
                const double g = pattern_gain(scn.tx_array, static_cast<std::size_t>(j), dir) *
                                 pattern_gain(scn.rx_array, static_cast<std::size_t>(i), -dir);
                h.entries(i, j) = std::sqrt(g) * lambda / (4.0 * std::numbers::pi * d) * block * std::polar(1.0, -k * d);
            }
        return h;
    }

    ChannelMatrix ris_cascade(const Scenario &scn, const RisConfig &config, double frequency)
    {
        check_config(scn, config);
        const auto n_rx = static_cast<Eigen::Index>(scn.rx_array.size());
        const auto n_tx = static_cast<Eigen::Index>(scn.tx_array.size());

        ChannelMatrix h{Eigen::MatrixXcd::Zero(n_rx, n_tx), frequency};
        for (Eigen::Index j = 0; j < n_tx; ++j)
            for (Eigen::Index i = 0; i < n_rx; ++i)
            {
                if (!co_polarized(scn, i, j))
                    continue;
                const int pol = scn.tx_array.polarizations[static_cast<std::size_t>(j)];
                const auto &bits = config.bits[static_cast<std::size_t>(pol)];
                cd sum = 0.0;
                for (std::size_t e = 0; e < scn.ris.size(); ++e)
                    sum += scn.ris.reflection(pol, bits[e]) * cascade_coefficient(scn, i, j, scn.ris.element_position(e), frequency);
                h.entries(i, j) = sum;
            }
        return h;
    }

    double direct_reference_power(const Scenario &scn)
    {
        const auto h = direct_channel(scn, scn.band.center());
        double sum = 0.0;
        std::size_t count = 0;
        for (Eigen::Index j = 0; j < h.tx_count(); ++j)
            for (Eigen::Index i = 0; i < h.rx_count(); ++i)
                if (co_polarized(scn, i, j))
                    sum += std::norm(h.entries(i, j)), ++count;
        return count ? sum / static_cast<double>(count) : 0.0;
    }

    double max_path_length(const Scenario &scn)
    {
        double d_max = 0.0;
        for (std::size_t j = 0; j < scn.tx_array.size(); ++j)
        {
            const Vec3 t = scn.tx_array.element_position(j);
            for (std::size_t i = 0; i < scn.rx_array.size(); ++i)
            {
                const Vec3 r = scn.rx_array.element_position(i);
                if (scn.propagation.direct_enabled)
                    d_max = std::max(d_max, path_length(t, r));
                for (std::size_t e = 0; e < scn.ris.size(); ++e)
                {
                    const Vec3 p = scn.ris.element_position(e);
                    d_max = std::max(d_max, path_length(t, p) + path_length(p, r));
                }
            }
        }
        return d_max;
    }

    double phase_continuous_spacing(const Scenario &scn)
    {
        return speed_of_light / (2.0 * max_path_length(scn));
    }

    ChannelMatrix scatter_channel(const Scenario &scn, double frequency)
    {
        const auto n_rx = static_cast<Eigen::Index>(scn.rx_array.size());
        const auto n_tx = static_cast<Eigen::Index>(scn.tx_array.size());
        return {scatter_at(realize_scatter(scn), n_rx, n_tx, frequency), frequency};
    }

    FrequencySweep synthesize(const Scenario &scn, const std::optional<RisConfig> &config)
    {
        scn.validate();
        if (config)
            check_config(scn, *config);

        const auto n_rx = static_cast<Eigen::Index>(scn.rx_array.size());
        const auto n_tx = static_cast<Eigen::Index>(scn.tx_array.size());
        const auto rays = realize_scatter(scn);

        FrequencySweep sweep;
        sweep.frequencies = scn.band.frequencies();
        sweep.band_label = config ? "ris" : "reference";
        for (double f : sweep.frequencies)
        {
            ChannelMatrix h{scatter_at(rays, n_rx, n_tx, f), f};
            if (scn.propagation.direct_enabled)
                h.entries += direct_channel(scn, f).entries;
            if (config)
                h.entries += ris_cascade(scn, *config, f).entries;
            if (!h.is_finite())
                throw NumericError("synthesized channel is not finite");
            sweep.matrices.push_back(std::move(h));
        }
        return sweep;
    }

    CascadeTable::CascadeTable(const Scenario &scn, std::vector<double> frequencies)
        : frequencies_(std::move(frequencies)),
          n_rx_(static_cast<Eigen::Index>(scn.rx_array.size())),
          n_tx_(static_cast<Eigen::Index>(scn.tx_array.size()))
    {
        for (int pol = 0; pol < 2; ++pol)
        {
            gamma0_[static_cast<std::size_t>(pol)] = scn.ris.reflection(pol, 0);
            gamma1_[static_cast<std::size_t>(pol)] = scn.ris.reflection(pol, 1);
        }

        std::vector<Vec3> elements(scn.ris.size());
        for (std::size_t e = 0; e < elements.size(); ++e)
            elements[e] = scn.ris.element_position(e);

        paths_.resize(frequencies_.size());
        for (std::size_t fi = 0; fi < frequencies_.size(); ++fi)
            for (Eigen::Index j = 0; j < n_tx_; ++j)
                for (Eigen::Index i = 0; i < n_rx_; ++i)
                {
                    if (!co_polarized(scn, i, j))
                        continue;
                    Path p{i, j, scn.tx_array.polarizations[static_cast<std::size_t>(j)], {}, {}};
                    p.re.resize(elements.size());
                    p.im.resize(elements.size());
                    for (std::size_t e = 0; e < elements.size(); ++e)
                    {
                        const cd c = cascade_coefficient(scn, i, j, elements[e], frequencies_[fi]);
                        p.re[e] = c.real();
                        p.im[e] = c.imag();
                    }
                    paths_[fi].push_back(std::move(p));
                }
    }

    cd CascadeTable::path_value(const Path &path, const RisConfig &config) const
    {
        const auto pol = static_cast<std::size_t>(path.polarization);
        const auto s = kernels::split_sum(path.re, path.im, config.bits[pol]);
        return gamma0_[pol] * s.zero + gamma1_[pol] * s.one;
    }

    std::vector<ChannelMatrix> CascadeTable::evaluate(const RisConfig &config) const
    {
        std::vector<ChannelMatrix> out;
        out.reserve(frequencies_.size());
        for (std::size_t fi = 0; fi < frequencies_.size(); ++fi)
        {
            ChannelMatrix h{Eigen::MatrixXcd::Zero(n_rx_, n_tx_), frequencies_[fi]};
            for (const auto &p : paths_[fi])
                h.entries(p.rx, p.tx) = path_value(p, config);
            out.push_back(std::move(h));
        }
        return out;
    }

    double CascadeTable::band_gain_with(const RisConfig &config, const std::vector<ChannelMatrix> &base) const
    {
        if (base.size() != frequencies_.size())
            throw ValidationError("base channel grid does not match the cascade table");
        if (frequencies_.empty())
            throw ValidationError("cascade table has no frequencies");
        double total = 0.0;
        for (std::size_t fi = 0; fi < frequencies_.size(); ++fi)
        {
            Eigen::MatrixXcd h = base[fi].entries;
            for (const auto &p : paths_[fi])
                h(p.rx, p.tx) += path_value(p, config);
            total += h.squaredNorm();
        }
        return total / static_cast<double>(frequencies_.size());
    }
}

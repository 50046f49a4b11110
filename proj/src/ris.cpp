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

#include "risim/ris.hpp"
#include "risim/error.hpp"
#include "risim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace risim
{
    Vec3 RisPanel::element_local(std::size_t idx) const
    {
        const std::size_t row = idx / cols;
        const std::size_t col = idx % cols;
        const double x = (static_cast<double>(col) - 0.5 * static_cast<double>(cols - 1)) * pitch;
        const double z = (0.5 * static_cast<double>(rows - 1) - static_cast<double>(row)) * pitch;
        return {x, 0.0, z};
    }

    std::complex<double> RisPanel::reflection(int polarization, std::uint8_t bit) const
    {
        const auto &cell = unit_cell.at(static_cast<std::size_t>(polarization));
        const double scale = loss_db == 0.0 ? 1.0 : std::pow(10.0, -loss_db / 20.0);
        return (bit ? cell.gamma1 : cell.gamma0) * scale;
    }

    void RisPanel::validate() const
    {
        if (rows * cols < 1)
            throw ValidationError("RIS panel needs at least one element");
        if (!(pitch > 0.0) || !std::isfinite(pitch))
            throw ValidationError("RIS element spacing must be positive");
        if (!pose.is_valid())
            throw ValidationError("RIS pose is not an orthonormal right-handed frame");
        for (const auto &cell : unit_cell)
            if (std::abs(cell.gamma0) > 1.0 + 1e-12 || std::abs(cell.gamma1) > 1.0 + 1e-12)
                throw ValidationError("RIS reflection coefficients must satisfy |gamma| <= 1");
        if (!(loss_db >= 0.0))
            throw ValidationError("RIS loss must be >= 0 dB");
        if (!(element_exponent >= 0.0))
            throw ValidationError("RIS element exponent must be >= 0");
        if (!(band_lo_hz < band_hi_hz))
            throw ValidationError("RIS design band must satisfy lo < hi");
    }

    RisConfig RisConfig::uniform(std::size_t rows, std::size_t cols, std::uint8_t bit)
    {
        RisConfig c;
        c.rows = rows;
        c.cols = cols;
        c.bits[0].assign(rows * cols, bit);
        c.bits[1].assign(rows * cols, bit);
        return c;
    }

    RisConfig RisConfig::flipped() const
    {
        RisConfig out = *this;
        for (auto &plane : out.bits)
            for (auto &b : plane)
                b ^= 1;
        return out;
    }

    double desired_phase(const RisPanel &panel, std::size_t element_idx, const Vec3 &tx, const Vec3 &rx, double frequency)
    {
        if (element_idx >= panel.size())
            throw ValidationError("RIS element index out of range");
        const Vec3 e = panel.element_position(element_idx);
        const double k = 2.0 * std::numbers::pi * frequency / speed_of_light;
        return std::fmod(k * (path_length(tx, e) + path_length(rx, e)), 2.0 * std::numbers::pi);
    }

    std::uint8_t quantize_phase(double phi)
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double p = std::fmod(phi, two_pi);
        if (p < 0.0)
            p += two_pi;
        return (p >= 0.5 * std::numbers::pi && p < 1.5 * std::numbers::pi) ? 1 : 0;
    }

    PanelElements::PanelElements(const RisPanel &panel)
    {
        const auto n = panel.size();
        x.resize(n), y.resize(n), z.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const Vec3 e = panel.element_position(i);
            x[i] = e.x, y[i] = e.y, z[i] = e.z;
        }
    }

    RisConfig phase_profile_for_focus(const RisPanel &panel, const FocusTarget &target)
    {
        return phase_profile_for_focus(panel, PanelElements(panel), target);
    }

    RisConfig phase_profile_for_focus(const RisPanel &panel, const PanelElements &elements, const FocusTarget &target)
    {
        if (!target.rx_coord.is_valid())
            throw ValidationError("focus target needs r > 0 and theta in [0, pi]");
        if (!(target.frequency > 0.0))
            throw ValidationError("focus frequency must be positive");
        if (panel.strict_band && (target.frequency < panel.band_lo_hz || target.frequency > panel.band_hi_hz))
            throw ValidationError("focus frequency outside the RIS design band");
        if (elements.x.size() != panel.size())
            throw ValidationError("element cache does not match the panel");

        const Vec3 rx = spherical_to_cartesian(target.rx_coord, panel.pose);

        RisConfig cfg;
        cfg.rows = panel.rows;
        cfg.cols = panel.cols;
        cfg.bits[0].resize(panel.size());

        kernels::FocusInput in{{elements.x, elements.y, elements.z},
                               {target.tx_position.x, target.tx_position.y, target.tx_position.z},
                               {rx.x, rx.y, rx.z},
                               2.0 * std::numbers::pi * target.frequency / speed_of_light,
                               target.flip};
        kernels::focus_bits(in, cfg.bits[0]);
        cfg.bits[1] = cfg.bits[0];
        return cfg;
    }

    namespace
    {
        Vec3 plane_wave_direction(const RisPanel &panel, const PlaneWave &w)
        {
            return panel.pose.rotate_to_global(spherical_to_cartesian({1.0, w.theta, w.phi}));
        }

        // Path length (relative for plane waves), unit direction towards the endpoint, spreading factor
        struct Leg
        {
            double length;
            double cos_normal;
            double spreading;
        };

        Leg leg(const RisPanel &panel, const Vec3 &element, const Endpoint &ep)
        {
            if (const auto *p = std::get_if<Vec3>(&ep))
            {
                const Vec3 d = *p - element;
                const double len = d.norm();
                return {len, d.dot(panel.normal()) / len, 1.0 / len};
            }
            const Vec3 u = plane_wave_direction(panel, std::get<PlaneWave>(ep));
            return {-u.dot(element - panel.pose.origin), u.dot(panel.normal()), 1.0};
        }

        double element_amplitude(double cos_in, double cos_out, double q)
        {
            if (cos_in <= 0.0 || cos_out <= 0.0)
                return 0.0;
            if (q == 1.0)
                return cos_in * cos_out;
            return std::pow(cos_in * cos_out, q);
        }
    }

    std::complex<double> reradiated_field(const RisPanel &panel, const RisConfig &config,
                                          const Endpoint &source, const Endpoint &observer,
                                          double frequency, int polarization)
    {
        if (!config.matches(panel) || config.bits[static_cast<std::size_t>(polarization)].size() != panel.size())
            throw ValidationError("RIS configuration dimensions do not match the panel");

        const double k = 2.0 * std::numbers::pi * frequency / speed_of_light;
        const std::complex<double> g0 = panel.reflection(polarization, 0);
        const std::complex<double> g1 = panel.reflection(polarization, 1);
        const auto &bits = config.bits[static_cast<std::size_t>(polarization)];

        std::complex<double> sum = 0.0;
        for (std::size_t i = 0; i < panel.size(); ++i)
        {
            const Vec3 e = panel.element_position(i);
            const Leg in = leg(panel, e, source);
            const Leg out = leg(panel, e, observer);
            const double a = element_amplitude(in.cos_normal, out.cos_normal, panel.element_exponent) * in.spreading * out.spreading;
            if (a == 0.0)
                continue;
            sum += a * (bits[i] ? g1 : g0) * std::polar(1.0, -k * (in.length + out.length));
        }
        return sum;
    }

    std::vector<double> beam_pattern(const RisPanel &panel, const RisConfig &config, double incidence_deg,
                                     std::span<const double> angles_deg, double frequency, int polarization)
    {
        if (angles_deg.empty())
            throw ValidationError("beam pattern needs a non-empty angle grid");
        for (double a : angles_deg)
            if (!(a >= 0.0 && a <= 180.0))
                throw ValidationError("beam pattern angles must lie within [0, 180] deg");

        const PlaneWave src{std::numbers::pi / 2, deg2rad(incidence_deg)};
        std::vector<double> power(angles_deg.size());
        for (std::size_t i = 0; i < angles_deg.size(); ++i)
            power[i] = std::norm(reradiated_field(panel, config, src, PlaneWave{std::numbers::pi / 2, deg2rad(angles_deg[i])},
                                                  frequency, polarization));

        const double peak = *std::max_element(power.begin(), power.end());
        for (auto &p : power)
        {
            if (peak <= 0.0)
                p = 0.0;
            else
                p = p == peak ? 0.0 : 10.0 * std::log10(std::max(p / peak, 1e-30));
        }
        return power;
    }

    RisConfig steering_config(const RisPanel &panel, double incidence_deg, double steer_deg, double frequency)
    {
        // Far points stand in for plane waves; the residual curvature across a 1 m aperture is ~1e-5 rad
        constexpr double far = 1.0e5;
        FocusTarget t;
        t.tx_position = spherical_to_cartesian({far, std::numbers::pi / 2, deg2rad(incidence_deg)}, panel.pose);
        t.rx_coord = {far, std::numbers::pi / 2, deg2rad(steer_deg)};
        t.frequency = frequency;
        return phase_profile_for_focus(panel, t);
    }

    std::string format_config(const RisConfig &config)
    {
        std::ostringstream os;
        for (std::size_t pol = 0; pol < 2; ++pol)
        {
            if (pol)
                os << '\n';
            for (std::size_t r = 0; r < config.rows; ++r)
            {
                for (std::size_t c = 0; c < config.cols; ++c)
                    os << (config.bits[pol][r * config.cols + c] ? '1' : '0');
                os << '\n';
            }
        }
        return os.str();
    }

    RisConfig parse_config(std::string_view text)
    {
        std::vector<std::vector<std::string>> blocks(1);
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string line(text.substr(pos, end - pos));
            pos = end + 1;
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty() && line.front() == '#')
                continue;
            if (line.empty())
            {
                if (!blocks.back().empty())
                    blocks.emplace_back();
                continue;
            }
            if (line.find_first_not_of("01") != std::string::npos)
                throw ValidationError("config line " + std::to_string(line_no) + ": only '0' and '1' are allowed");
            blocks.back().push_back(std::move(line));
        }
        if (blocks.back().empty())
            blocks.pop_back();
        if (blocks.size() != 2)
            throw ValidationError("config must contain exactly two polarization blocks, found " + std::to_string(blocks.size()));

        RisConfig cfg;
        cfg.rows = blocks[0].size();
        cfg.cols = blocks[0].front().size();
        for (std::size_t pol = 0; pol < 2; ++pol)
        {
            if (blocks[pol].size() != cfg.rows)
                throw ValidationError("config polarization blocks differ in row count");
            for (const auto &row : blocks[pol])
            {
                if (row.size() != cfg.cols)
                    throw ValidationError("config rows differ in length");
                for (char ch : row)
                    cfg.bits[pol].push_back(ch == '1' ? 1 : 0);
            }
        }
        return cfg;
    }
}

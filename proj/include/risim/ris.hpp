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

#ifndef risim_ris_H
#define risim_ris_H

#include "risim/geometry.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace risim
{
    // Reflection coefficients of one unit cell for bit states 0 and 1
    struct UnitCell
    {
        std::complex<double> gamma0{1.0, 0.0};
        std::complex<double> gamma1{-1.0, 0.0};
    };

    // Planar 1-bit RIS. Elements lie in the local x-z plane of "pose", the
    // broadside normal is local +y. Element (row, col) has index row * cols + col;
    // row 0 is the top row (largest z), col 0 the leftmost column (smallest x).
    struct RisPanel
    {
        std::size_t rows = 32;
        std::size_t cols = 32;
        double pitch = 0.03; // Element spacing [m]
        Pose pose{};
        std::array<UnitCell, 2> unit_cell{}; // Per polarization
        double element_exponent = 1.0;       // q in the cos^q element pattern
        double loss_db = 0.0;                // Extra magnitude loss applied to both states
        double band_lo_hz = 3.2e9;           // Design band
        double band_hi_hz = 3.8e9;
        bool strict_band = false; // Reject focus targets outside the design band

        std::size_t size() const { return rows * cols; }
        Vec3 element_local(std::size_t idx) const;
        Vec3 element_position(std::size_t idx) const { return pose.to_global(element_local(idx)); }
        Vec3 normal() const { return pose.y_axis; }

        // Effective reflection coefficient including loss_db
        std::complex<double> reflection(int polarization, std::uint8_t bit) const;

        void validate() const;
    };

    // Per-element bit state, one row-major matrix per polarization
    struct RisConfig
    {
        std::size_t rows = 0;
        std::size_t cols = 0;
        std::array<std::vector<std::uint8_t>, 2> bits;

        static RisConfig uniform(std::size_t rows, std::size_t cols, std::uint8_t bit = 0);

        std::size_t size() const { return rows * cols; }
        RisConfig flipped() const;
        bool matches(const RisPanel &panel) const { return rows == panel.rows && cols == panel.cols; }
        bool operator==(const RisConfig &) const = default;
    };

    struct FocusTarget
    {
        Vec3 tx_position{};       // Global frame, assumed known
        SphericalCoord rx_coord{}; // In the RIS local frame
        bool flip = false;
        double frequency = 3.5e9; // [Hz]
    };

    // Phase k * (d_tx + d_rx) mod 2pi accumulated to element "element_idx" [rad, 0 ... 2pi)
    double desired_phase(const RisPanel &panel, std::size_t element_idx, const Vec3 &tx, const Vec3 &rx, double frequency);

    // Nearest of the two states {0, pi}: 1 iff (phi mod 2pi) in [pi/2, 3pi/2)
    std::uint8_t quantize_phase(double phi);

    // Global element positions in structure-of-arrays layout
    struct PanelElements
    {
        std::vector<double> x, y, z;

        explicit PanelElements(const RisPanel &panel);
    };

    // 1-bit co-phasing profile for a focal point, both polarizations get the same profile
    RisConfig phase_profile_for_focus(const RisPanel &panel, const FocusTarget &target);

    // Same, reusing precomputed element positions of "panel"
    RisConfig phase_profile_for_focus(const RisPanel &panel, const PanelElements &elements, const FocusTarget &target);

    // Far-field direction in the RIS local frame (polar angle from local +z, azimuth from local +x)
    struct PlaneWave
    {
        double theta = std::numbers::pi / 2;
        double phi = std::numbers::pi / 2;
    };

    // Source or observer: a point (global frame) or a far-field direction
    using Endpoint = std::variant<Vec3, PlaneWave>;

    // Coherent sum over elements of A * Gamma(bit) * exp(-jk(d_in + d_out)) with the cos^q
    // element pattern and 1/(d_in d_out) spreading for point endpoints
    std::complex<double> reradiated_field(const RisPanel &panel, const RisConfig &config,
                                          const Endpoint &source, const Endpoint &observer,
                                          double frequency, int polarization = 0);

    // Normalized pattern in dB (peak = 0) of the horizontal cut (theta = 90 deg) for a plane wave
    // arriving from azimuth incidence_deg; angles in degrees within [0, 180], 90 = broadside
    std::vector<double> beam_pattern(const RisPanel &panel, const RisConfig &config, double incidence_deg,
                                     std::span<const double> angles_deg, double frequency, int polarization = 0);

    // Far-field steering profile from incidence_deg to steer_deg in the horizontal cut
    RisConfig steering_config(const RisPanel &panel, double incidence_deg, double steer_deg, double frequency);

    // Text grid of 0/1 characters, row-major, one block per polarization separated by a blank line
    std::string format_config(const RisConfig &config);
    RisConfig parse_config(std::string_view text);
}

#endif

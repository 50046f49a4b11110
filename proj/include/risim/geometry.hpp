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

#ifndef risim_geometry_H
#define risim_geometry_H

#include <cmath>
#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

namespace risim
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
    constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

    inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
    inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

    // Cartesian coordinate or direction in meters (global frame unless stated otherwise)
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        constexpr Vec3 cross(const Vec3 &o) const
        {
            return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
        }
        double norm() const { return std::sqrt(dot(*this)); }
        Vec3 normalized() const { return *this / norm(); }
        bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

    // Spherical coordinate: polar angle theta from local +z, azimuth phi from local +x
    struct SphericalCoord
    {
        double r = 1.0;     // [m], > 0
        double theta = 0.0; // [rad], in [0, pi]
        double phi = 0.0;   // [rad], in [-pi, pi)

        bool is_valid() const;
    };

    // Origin and right-handed orthonormal triad of a local coordinate frame
    struct Pose
    {
        Vec3 origin{};
        Vec3 x_axis{1.0, 0.0, 0.0};
        Vec3 y_axis{0.0, 1.0, 0.0};
        Vec3 z_axis{0.0, 0.0, 1.0};

        // Rotation order: roll about x, then tilt about y, then yaw about z.
        // A positive tilt rotates the local +x axis towards -z (down-tilt).
        static Pose from_angles(const Vec3 &origin, double yaw, double tilt, double roll = 0.0);

        bool is_valid(double tol = 1e-9) const;

        Vec3 to_global(const Vec3 &local) const { return origin + x_axis * local.x + y_axis * local.y + z_axis * local.z; }
        Vec3 rotate_to_global(const Vec3 &local) const { return x_axis * local.x + y_axis * local.y + z_axis * local.z; }
        Vec3 rotate_to_local(const Vec3 &global) const { return {global.dot(x_axis), global.dot(y_axis), global.dot(z_axis)}; }
        Vec3 to_local(const Vec3 &global) const { return rotate_to_local(global - origin); }
    };

    // Point at spherical coordinate "s" measured in the local axes of "frame"
    Vec3 spherical_to_cartesian(const SphericalCoord &s, const Pose &frame = {});

    // Inverse of spherical_to_cartesian; phi is returned in [-pi, pi)
    SphericalCoord cartesian_to_spherical(const Vec3 &point, const Pose &frame = {});

    // Euclidean distance
    double path_length(const Vec3 &a, const Vec3 &b);

    // Element radiation patterns. Boresight of every pattern is the local +x axis of the array pose.
    struct SectorPattern
    {
        double peak_gain_dbi = 16.0;
        double az_beamwidth_deg = 89.0; // 3 dB beamwidth in azimuth
        double el_beamwidth_deg = 6.5;  // 3 dB beamwidth in elevation
        double backlobe_db = -30.0;     // Floor relative to the peak
    };

    // Ground-backed dipole: G = peak * cos^2(elevation)
    struct DipolePattern
    {
        double peak_gain_dbi = 2.15;
    };

    struct IsotropicPattern
    {
    };

    using ElementPattern = std::variant<SectorPattern, DipolePattern, IsotropicPattern>;

    struct AntennaArray
    {
        Pose pose{};
        std::vector<Vec3> elements{{}};      // Element offsets in the local frame
        ElementPattern pattern = IsotropicPattern{};
        std::vector<int> polarizations{0};   // Polarization tag per element, 0 or 1

        std::size_t size() const { return elements.size(); }
        Vec3 element_position(std::size_t idx) const { return pose.to_global(elements.at(idx)); }

        // Throws ValidationError when the array is inconsistent
        void validate() const;
    };

    // Linear power gain of element "element_idx" towards the unit global direction "direction"
    double pattern_gain(const AntennaArray &array, std::size_t element_idx, const Vec3 &direction);
}

#endif

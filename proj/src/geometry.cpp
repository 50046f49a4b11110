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

#include "risim/geometry.hpp"
#include "risim/error.hpp"

#include <algorithm>
#include <string>

namespace risim
{
    bool SphericalCoord::is_valid() const
    {
        return std::isfinite(r) && std::isfinite(theta) && std::isfinite(phi) &&
               r > 0.0 && theta >= 0.0 && theta <= std::numbers::pi;
    }

    Pose Pose::from_angles(const Vec3 &origin, double yaw, double tilt, double roll)
    {
        const double cy = std::cos(yaw), sy = std::sin(yaw);
        const double ct = std::cos(tilt), st = std::sin(tilt);
        const double cr = std::cos(roll), sr = std::sin(roll);

        // Columns of R = Rz(yaw) * Ry(tilt) * Rx(roll)
        Pose p;
        p.origin = origin;
        p.x_axis = {cy * ct, sy * ct, -st};
        p.y_axis = {cy * st * sr - sy * cr, sy * st * sr + cy * cr, ct * sr};
        p.z_axis = {cy * st * cr + sy * sr, sy * st * cr - cy * sr, ct * cr};
        return p;
    }

    bool Pose::is_valid(double tol) const
    {
        if (!origin.is_finite() || !x_axis.is_finite() || !y_axis.is_finite() || !z_axis.is_finite())
            return false;
        auto unit = [tol](const Vec3 &v)
        { return std::abs(v.norm() - 1.0) <= tol; };
        if (!unit(x_axis) || !unit(y_axis) || !unit(z_axis))
            return false;
        if (std::abs(x_axis.dot(y_axis)) > tol || std::abs(y_axis.dot(z_axis)) > tol || std::abs(x_axis.dot(z_axis)) > tol)
            return false;
        // Right-handed
        return (x_axis.cross(y_axis) - z_axis).norm() <= tol;
    }

    Vec3 spherical_to_cartesian(const SphericalCoord &s, const Pose &frame)
    {
        const double st = std::sin(s.theta);
        const Vec3 local{s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi), s.r * std::cos(s.theta)};
        return frame.to_global(local);
    }

    SphericalCoord cartesian_to_spherical(const Vec3 &point, const Pose &frame)
    {
        const Vec3 local = frame.to_local(point);
        SphericalCoord s;
        s.r = local.norm();
        s.theta = s.r > 0.0 ? std::acos(std::clamp(local.z / s.r, -1.0, 1.0)) : 0.0;
        s.phi = std::atan2(local.y, local.x);
        if (s.phi >= std::numbers::pi)
            s.phi -= 2.0 * std::numbers::pi;
        return s;
    }

    double path_length(const Vec3 &a, const Vec3 &b)
    {
        return (b - a).norm();
    }

    void AntennaArray::validate() const
    {
        if (elements.empty())
            throw ValidationError("antenna array needs at least one element");
        if (polarizations.size() != elements.size())
            throw ValidationError("antenna array has " + std::to_string(elements.size()) + " elements but " +
                                  std::to_string(polarizations.size()) + " polarization tags");
        for (int p : polarizations)
            if (p != 0 && p != 1)
                throw ValidationError("polarization tags must be 0 or 1");
        for (const auto &e : elements)
            if (!e.is_finite())
                throw ValidationError("antenna element offsets must be finite");
        if (!pose.is_valid())
            throw ValidationError("antenna pose is not an orthonormal right-handed frame");
        if (const auto *s = std::get_if<SectorPattern>(&pattern))
        {
            if (!(s->az_beamwidth_deg > 0.0) || !(s->el_beamwidth_deg > 0.0))
                throw ValidationError("sector beamwidths must be positive");
            if (!(s->backlobe_db <= 0.0))
                throw ValidationError("sector backlobe level must be <= 0 dB");
        }
    }

    namespace
    {
        struct GainVisitor
        {
            Vec3 local; // Unit direction in the array frame

            double operator()(const SectorPattern &s) const
            {
                const double az = rad2deg(std::atan2(local.y, local.x));
                const double el = rad2deg(std::asin(std::clamp(local.z, -1.0, 1.0)));
                const double az_n = az / s.az_beamwidth_deg;
                const double el_n = el / s.el_beamwidth_deg;
                const double attenuation = std::min(12.0 * (az_n * az_n + el_n * el_n), -s.backlobe_db);
                return db2lin(s.peak_gain_dbi - attenuation);
            }

            double operator()(const DipolePattern &d) const
            {
                // cos^2(el) = 1 - sin^2(el)
                const double sz = std::clamp(local.z, -1.0, 1.0);
                return db2lin(d.peak_gain_dbi) * (1.0 - sz * sz);
            }

            double operator()(const IsotropicPattern &) const { return 1.0; }
        };
    }

    double pattern_gain(const AntennaArray &array, std::size_t element_idx, const Vec3 &direction)
    {
        if (element_idx >= array.size())
            throw ValidationError("element index " + std::to_string(element_idx) + " out of range");
        if (!direction.is_finite() || std::abs(direction.norm() - 1.0) > 1e-6)
            throw ValidationError("pattern_gain expects a unit-norm direction");
        return std::visit(GainVisitor{array.pose.rotate_to_local(direction)}, array.pattern);
    }
}

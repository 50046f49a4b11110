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

#include "risim/error.hpp"
#include "risim/geometry.hpp"
#include "risim/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace risim;

namespace
{
    constexpr double pi = std::numbers::pi;

    // Inverse conversion written out independently of the library
    SphericalCoord oracle_spherical(const Vec3 &p)
    {
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        return {r, std::acos(p.z / r), std::atan2(p.y, p.x)};
    }

    void expect_vec(const Vec3 &a, const Vec3 &b, double tol = 1e-12)
    {
        EXPECT_NEAR(a.x, b.x, tol);
        EXPECT_NEAR(a.y, b.y, tol);
        EXPECT_NEAR(a.z, b.z, tol);
    }

    AntennaArray sector_array()
    {
        AntennaArray a;
        a.pattern = SectorPattern{16.0, 89.0, 6.5, -30.0};
        return a;
    }
}

TEST(Spherical, AxisCase)
{
    expect_vec(spherical_to_cartesian({1.0, pi / 2, 0.0}), {1.0, 0.0, 0.0});
}

TEST(Spherical, PoleIgnoresAzimuth)
{
    for (double phi : {0.0, 1.0, -2.5, 3.0})
        expect_vec(spherical_to_cartesian({1.0, 0.0, phi}), {0.0, 0.0, 1.0});
}

TEST(Spherical, AxisPlusTranslation)
{
    Pose frame;
    frame.origin = {1.0, 1.0, 1.0};
    expect_vec(spherical_to_cartesian({2.0, pi / 2, pi / 2}, frame), {1.0, 3.0, 1.0});
}

TEST(Spherical, RoundTripInRotatedFrames)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i)
    {
        const Pose frame = Pose::from_angles({u(rng) * 10, u(rng) * 10, u(rng) * 10}, (u(rng) - 0.5) * 6, (u(rng) - 0.5) * 3, (u(rng) - 0.5) * 6);
        const SphericalCoord s{0.1 + 50 * u(rng), 1e-3 + (pi - 2e-3) * u(rng), -pi + 2 * pi * u(rng)};
        const Vec3 p = spherical_to_cartesian(s, frame);

        const auto lib = cartesian_to_spherical(p, frame);
        const auto ref = oracle_spherical(frame.to_local(p));
        for (const auto &back : {lib, ref})
        {
            EXPECT_NEAR(back.r, s.r, 1e-9);
            EXPECT_NEAR(back.theta, s.theta, 1e-9);
            EXPECT_NEAR(std::remainder(back.phi - s.phi, 2 * pi), 0.0, 1e-9);
        }
        EXPECT_GE(lib.phi, -pi);
        EXPECT_LT(lib.phi, pi);
    }
}

TEST(Spherical, ValidityRules)
{
    EXPECT_TRUE((SphericalCoord{1.0, 0.0, 0.0}.is_valid()));
    EXPECT_FALSE((SphericalCoord{0.0, 1.0, 0.0}.is_valid()));
    EXPECT_FALSE((SphericalCoord{1.0, -0.1, 0.0}.is_valid()));
    EXPECT_FALSE((SphericalCoord{1.0, 3.2, 0.0}.is_valid()));
}

TEST(Pose, FromAnglesIsOrthonormalAndRightHanded)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i)
    {
        const Pose p = Pose::from_angles({}, u(rng), u(rng), u(rng));
        EXPECT_TRUE(p.is_valid());
        expect_vec(p.x_axis.cross(p.y_axis), p.z_axis, 1e-12);
    }
}

TEST(Pose, PositiveTiltPointsDown)
{
    const Pose p = Pose::from_angles({}, 0.0, deg2rad(10.0));
    EXPECT_LT(p.x_axis.z, 0.0);
    EXPECT_NEAR(p.x_axis.z, -std::sin(deg2rad(10.0)), 1e-15);
}

TEST(Pose, YawTurnsBoresightCounterClockwise)
{
    const Pose p = Pose::from_angles({}, deg2rad(90.0), 0.0);
    expect_vec(p.x_axis, {0.0, 1.0, 0.0}, 1e-15);
}

TEST(Pose, LocalGlobalRoundTrip)
{
    const Pose p = Pose::from_angles({1, 2, 3}, 0.4, -0.2, 1.1);
    const Vec3 g{-4.0, 7.5, 0.25};
    expect_vec(p.to_global(p.to_local(g)), g, 1e-12);
}

TEST(PathLength, Examples)
{
    EXPECT_DOUBLE_EQ(path_length({0, 0, 0}, {3, 4, 0}), 5.0);
    EXPECT_EQ(path_length({1.5, -2, 7}, {1.5, -2, 7}), 0.0);
}

TEST(PathLength, ZoneATransmitterIs175m)
{
    const auto scn = load_scenario(test::data_dir() / "zone_a.scn");
    EXPECT_NEAR(path_length(scn.ris.pose.origin, scn.tx_array.pose.origin), 175.0, 1e-12);
}

TEST(PathLength, SymmetricAndTriangleInequality)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i)
    {
        const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
        EXPECT_EQ(path_length(a, b), path_length(b, a));
        EXPECT_LE(path_length(a, c), path_length(a, b) + path_length(b, c) + 1e-12);
    }
}

TEST(PatternGain, SectorBoresightIs16dBi)
{
    EXPECT_NEAR(lin2db(pattern_gain(sector_array(), 0, {1, 0, 0})), 16.0, 1e-12);
}

TEST(PatternGain, SectorHalfBeamwidthIs3dBDown)
{
    const double az = deg2rad(44.5);
    EXPECT_NEAR(lin2db(pattern_gain(sector_array(), 0, {std::cos(az), std::sin(az), 0.0})), 13.0, 1e-12);
}

TEST(PatternGain, SectorElevationHalfBeamwidth)
{
    const double el = deg2rad(3.25);
    EXPECT_NEAR(lin2db(pattern_gain(sector_array(), 0, {std::cos(el), 0.0, std::sin(el)})), 13.0, 1e-12);
}

TEST(PatternGain, SectorBacklobeFloor)
{
    EXPECT_NEAR(lin2db(pattern_gain(sector_array(), 0, {-1, 0, 0})), 16.0 - 30.0, 1e-12);
}

TEST(PatternGain, SectorFollowsPose)
{
    auto a = sector_array();
    a.pose = Pose::from_angles({5, 5, 5}, deg2rad(30.0), 0.0);
    const double yaw = deg2rad(30.0);
    EXPECT_NEAR(lin2db(pattern_gain(a, 0, {std::cos(yaw), std::sin(yaw), 0.0})), 16.0, 1e-12);
}

TEST(PatternGain, SectorMonotoneInAzimuth)
{
    const auto a = sector_array();
    double prev = pattern_gain(a, 0, {1, 0, 0});
    for (double deg = 0.25; deg <= 180.0; deg += 0.25)
    {
        const double az = deg2rad(deg);
        const double g = pattern_gain(a, 0, {std::cos(az), std::sin(az), 0.0});
        const double mirrored = pattern_gain(a, 0, {std::cos(az), -std::sin(az), 0.0});
        EXPECT_LE(g, prev * (1 + 1e-15));
        EXPECT_DOUBLE_EQ(g, mirrored);
        prev = g;
    }
}

TEST(PatternGain, DipoleCosSquaredOfElevation)
{
    AntennaArray a;
    a.pattern = DipolePattern{2.15};
    for (double deg : {0.0, 15.0, 45.0, 80.0})
    {
        const double el = deg2rad(deg);
        const double expected = std::pow(10.0, 0.215) * std::cos(el) * std::cos(el);
        EXPECT_NEAR(pattern_gain(a, 0, {std::cos(el), 0.0, std::sin(el)}), expected, 1e-12);
    }
}

TEST(PatternGain, IsotropicIsOne)
{
    AntennaArray a;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    for (int i = 0; i < 50; ++i)
        EXPECT_EQ(pattern_gain(a, 0, Vec3{n(rng), n(rng), n(rng)}.normalized()), 1.0);
}

TEST(PatternGain, RejectsNonUnitDirection)
{
    EXPECT_THROW(pattern_gain(sector_array(), 0, {2, 0, 0}), ValidationError);
    EXPECT_THROW(pattern_gain(sector_array(), 0, {1.00001, 0, 0}), ValidationError);
    EXPECT_NO_THROW(pattern_gain(sector_array(), 0, {1.0000001, 0, 0}));
}

TEST(PatternGain, RejectsBadElementIndex)
{
    EXPECT_THROW(pattern_gain(sector_array(), 1, {1, 0, 0}), ValidationError);
}

TEST(AntennaArray, ValidateRejectsMismatchedPolarizations)
{
    AntennaArray a;
    a.elements = {{}, {0, 0.1, 0}};
    a.polarizations = {0};
    EXPECT_THROW(a.validate(), ValidationError);
    a.polarizations = {0, 2};
    EXPECT_THROW(a.validate(), ValidationError);
    a.polarizations = {0, 1};
    EXPECT_NO_THROW(a.validate());
}

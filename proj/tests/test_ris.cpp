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
#include "risim/io.hpp"
#include "risim/ris.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace risim;

namespace
{
    constexpr double pi = std::numbers::pi;

    // Distance between two angles on the circle
    double circular(double a, double b)
    {
        return std::abs(std::remainder(a - b, 2 * pi));
    }

    std::vector<double> grid(double step = 0.25)
    {
        std::vector<double> g;
        for (double a = 0.0; a <= 180.0 + 1e-9; a += step)
            g.push_back(a);
        return g;
    }

    double argmax_angle(const std::vector<double> &pattern, const std::vector<double> &angles)
    {
        return angles[static_cast<std::size_t>(std::max_element(pattern.begin(), pattern.end()) - pattern.begin())];
    }

    RisPanel tile(std::size_t n)
    {
        RisPanel p;
        p.rows = p.cols = n;
        return p;
    }

    RisConfig random_config(std::mt19937_64 &rng, std::size_t rows, std::size_t cols)
    {
        std::bernoulli_distribution b(0.5);
        RisConfig c = RisConfig::uniform(rows, cols);
        for (auto &plane : c.bits)
            for (auto &bit : plane)
                bit = b(rng);
        return c;
    }

    // Element position written out from the row/column layout rule
    Vec3 oracle_element(const RisPanel &p, std::size_t row, std::size_t col)
    {
        const double x = (static_cast<double>(col) - (static_cast<double>(p.cols) - 1.0) / 2.0) * p.pitch;
        const double z = ((static_cast<double>(p.rows) - 1.0) / 2.0 - static_cast<double>(row)) * p.pitch;
        return p.pose.origin + p.pose.x_axis * x + p.pose.z_axis * z;
    }

    // Perfectly conjugated (continuous-phase) field magnitude for point endpoints
    double continuous_field(const RisPanel &panel, const Vec3 &tx, const Vec3 &rx)
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < panel.size(); ++i)
        {
            const Vec3 e = panel.element_position(i);
            const double d1 = path_length(tx, e), d2 = path_length(rx, e);
            const double c1 = (tx - e).dot(panel.normal()) / d1, c2 = (rx - e).dot(panel.normal()) / d2;
            sum += std::max(0.0, c1) * std::max(0.0, c2) / (d1 * d2);
        }
        return sum;
    }
}

TEST(DesiredPhase, IntegerWavelengthsGiveZero)
{
    RisPanel p = tile(3); // centre element sits at the panel origin
    const Vec3 on_axis{0.0, 10.0, 0.0};
    EXPECT_LT(circular(desired_phase(p, 4, on_axis, on_axis, speed_of_light), 0.0), 1e-9);
}

TEST(DesiredPhase, HalfWavelengthGivesPi)
{
    RisPanel p = tile(3);
    EXPECT_LT(circular(desired_phase(p, 4, {0.0, 10.0, 0.0}, {0.0, 10.5, 0.0}, speed_of_light), pi), 1e-9);
}

TEST(DesiredPhase, ZoneACornerMatchesDistanceSum)
{
    const auto scn = load_scenario(test::data_dir() / "zone_a.scn");
    const auto &p = scn.ris;
    const double f = scn.focus_frequency();
    const Vec3 rx = scn.rx_array.pose.origin, tx = scn.tx_array.pose.origin;
    for (auto [row, col] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, 31}, {31, 0}, {31, 31}})
    {
        const Vec3 e = oracle_element(p, row, col);
        const double dx1 = tx.x - e.x, dy1 = tx.y - e.y, dz1 = tx.z - e.z;
        const double dx2 = rx.x - e.x, dy2 = rx.y - e.y, dz2 = rx.z - e.z;
        const double total = std::sqrt(dx1 * dx1 + dy1 * dy1 + dz1 * dz1) + std::sqrt(dx2 * dx2 + dy2 * dy2 + dz2 * dz2);
        const double expected = std::fmod(2 * pi * f / speed_of_light * total, 2 * pi);
        const double got = desired_phase(p, row * p.cols + col, tx, rx, f);
        EXPECT_GE(got, 0.0);
        EXPECT_LT(got, 2 * pi);
        EXPECT_LT(circular(got, expected), 1e-9);
    }
}

TEST(DesiredPhase, RejectsBadIndex)
{
    EXPECT_THROW(desired_phase(tile(2), 4, {0, 1, 0}, {0, 1, 0}, 3.5e9), ValidationError);
}

TEST(QuantizePhase, Examples)
{
    EXPECT_EQ(quantize_phase(0.1), 0);
    EXPECT_EQ(quantize_phase(3.0), 1);
    EXPECT_EQ(quantize_phase(pi / 2), 1);
}

TEST(QuantizePhase, NearestStateEverywhere)
{
    for (double phi = -20.0; phi < 20.0; phi += 0.01)
    {
        // Nearest of {0, pi} on the circle, ties aside
        const bool closer_to_pi = circular(phi, pi) < circular(phi, 0.0);
        if (std::abs(circular(phi, pi) - circular(phi, 0.0)) > 1e-9)
            EXPECT_EQ(quantize_phase(phi), closer_to_pi ? 1 : 0) << phi;
    }
    EXPECT_EQ(quantize_phase(1.5 * pi), 0);
    EXPECT_EQ(quantize_phase(-pi / 2), 0);
}

TEST(FocusProfile, FlipInvertsEveryBit)
{
    const auto scn = load_scenario(test::data_dir() / "zone_a.scn");
    FocusTarget t{scn.tx_array.pose.origin, {12.0, deg2rad(100.0), deg2rad(110.0)}, false, 3.615e9};
    const auto a = phase_profile_for_focus(scn.ris, t);
    t.flip = true;
    const auto b = phase_profile_for_focus(scn.ris, t);
    EXPECT_EQ(b, a.flipped());
    EXPECT_EQ(a.bits[0], a.bits[1]);
}

TEST(FocusProfile, MatchesQuantizedDesiredPhase)
{
    const auto scn = load_scenario(test::data_dir() / "zone_a.scn");
    const FocusTarget t{scn.tx_array.pose.origin, {20.0, deg2rad(95.0), deg2rad(70.0)}, false, 3.6e9};
    const auto c = phase_profile_for_focus(scn.ris, t);
    const Vec3 rx = spherical_to_cartesian(t.rx_coord, scn.ris.pose);
    for (std::size_t i = 0; i < scn.ris.size(); ++i)
        ASSERT_EQ(c.bits[0][i], quantize_phase(desired_phase(scn.ris, i, t.tx_position, rx, t.frequency))) << i;
}

TEST(FocusProfile, SpecularIntegerWavelengthsGiveUniformBits)
{
    RisPanel p = tile(4);
    const FocusTarget t{{0.0, 10.0, 0.0}, {10.0, pi / 2, pi / 2}, false, speed_of_light};
    const auto c = phase_profile_for_focus(p, t);
    EXPECT_EQ(c, RisConfig::uniform(4, 4, 0));
}

TEST(FocusProfile, ZoneALikeTargetPeaksAtItsAzimuth)
{
    RisPanel p; // 32 x 32
    const Vec3 tx = spherical_to_cartesian({175.0, pi / 2, deg2rad(120.0)}, p.pose);
    const FocusTarget t{tx, {20.0, pi / 2, deg2rad(60.0)}, false, 3.615e9};
    const auto angles = grid();
    const auto pattern = beam_pattern(p, phase_profile_for_focus(p, t), 120.0, angles, t.frequency);
    EXPECT_NEAR(argmax_angle(pattern, angles), 60.0, 3.0);
}

TEST(FocusProfile, Validation)
{
    RisPanel p = tile(4);
    FocusTarget t{{0, 10, 0}, {0.0, pi / 2, 0.0}, false, 3.5e9};
    EXPECT_THROW(phase_profile_for_focus(p, t), ValidationError);
    t.rx_coord.r = -1.0;
    EXPECT_THROW(phase_profile_for_focus(p, t), ValidationError);
    t.rx_coord.r = 5.0;
    t.frequency = 5e9;
    EXPECT_NO_THROW(phase_profile_for_focus(p, t));
    p.strict_band = true;
    EXPECT_THROW(phase_profile_for_focus(p, t), ValidationError);
}

TEST(ReradiatedField, CoherentBroadsideSum)
{
    for (std::size_t n : {1u, 4u, 16u})
    {
        RisPanel p = tile(n);
        const auto f = reradiated_field(p, RisConfig::uniform(n, n), PlaneWave{}, PlaneWave{}, 3.5e9);
        EXPECT_NEAR(std::abs(f), static_cast<double>(n * n), 1e-9 * n * n);
    }
}

TEST(ReradiatedField, FlippedTwinIsExactNegative)
{
    std::mt19937_64 rng(21);
    RisPanel p = tile(16);
    for (int i = 0; i < 20; ++i)
    {
        const auto c = random_config(rng, 16, 16);
        const Endpoint src = Vec3{3.0, 40.0, 1.0};
        const Endpoint obs = PlaneWave{1.3, 0.8};
        const auto a = reradiated_field(p, c, src, obs, 3.5e9);
        const auto b = reradiated_field(p, c.flipped(), src, obs, 3.5e9);
        EXPECT_EQ(b, -a);
    }
}

TEST(ReradiatedField, PointSourcesMatchElementSumOracle)
{
    std::mt19937_64 rng(4);
    RisPanel p = tile(8);
    p.pose = Pose::from_angles({1, 2, 3}, 0.3, 0.1, -0.2);
    p.element_exponent = 1.5;
    p.unit_cell[0] = {{0.9, 0.1}, {-0.8, 0.2}};
    const auto c = random_config(rng, 8, 8);
    const Vec3 tx = p.pose.to_global({4.0, 30.0, 2.0}), rx = p.pose.to_global({-3.0, 7.0, -1.0});
    const double f = 3.6e9, k = 2 * pi * f / speed_of_light;

    std::complex<double> expected = 0.0;
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t col = 0; col < 8; ++col)
        {
            const Vec3 e = oracle_element(p, r, col);
            const double d1 = path_length(tx, e), d2 = path_length(rx, e);
            const double a = std::pow((tx - e).dot(p.pose.y_axis) / d1 * (rx - e).dot(p.pose.y_axis) / d2, 1.5);
            const auto gamma = c.bits[0][r * 8 + col] ? p.unit_cell[0].gamma1 : p.unit_cell[0].gamma0;
            expected += a * gamma * std::exp(std::complex<double>(0.0, -k * (d1 + d2))) / (d1 * d2);
        }
    const auto got = reradiated_field(p, c, tx, rx, f);
    EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-12 * std::abs(expected));
}

TEST(ReradiatedField, QuantizedSteeringWithinOneBitLoss)
{
    RisPanel p = tile(16);
    const double f = 3.5e9;
    const auto c = steering_config(p, 120.0, 90.0, f);
    const auto q = reradiated_field(p, c, PlaneWave{pi / 2, deg2rad(120.0)}, PlaneWave{pi / 2, deg2rad(90.0)}, f);
    // Continuous-phase oracle: every element adds in phase with amplitude cos(in) cos(out)
    const double continuous = 256.0 * std::sin(deg2rad(120.0)) * 1.0;
    const double loss_db = 20.0 * std::log10(std::abs(q) / continuous);
    EXPECT_LE(loss_db, 0.0);
    EXPECT_GE(loss_db, -3.92 - 1.0);
}

TEST(ReradiatedField, QuantizationNeverGains)
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RisPanel p = tile(16);
    for (int i = 0; i < 100; ++i)
    {
        const Vec3 tx = spherical_to_cartesian({20.0 + 200.0 * u(rng), deg2rad(60 + 60 * u(rng)), deg2rad(20 + 140 * u(rng))});
        const SphericalCoord rxs{3.0 + 30.0 * u(rng), deg2rad(60 + 60 * u(rng)), deg2rad(20 + 140 * u(rng))};
        const double f = 3.4e9 + 0.4e9 * u(rng);
        const auto c = phase_profile_for_focus(p, {tx, rxs, false, f});
        const Vec3 rx = spherical_to_cartesian(rxs);
        // No lower bound here: near the mirror geometry the phase spread over the panel is too
        // small for the averaged 1-bit loss to apply
        EXPECT_LE(std::abs(reradiated_field(p, c, tx, rx, f)), continuous_field(p, tx, rx) * (1 + 1e-12));
    }
}

TEST(ReradiatedField, SteeredQuantizationLossWithinBound)
{
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RisPanel p = tile(16);
    for (int i = 0; i < 100; ++i)
    {
        const double inc = 30 + 120 * u(rng), steer = 30 + 120 * u(rng), f = 3.5e9;
        const auto c = steering_config(p, inc, steer, f);
        const double q = std::abs(reradiated_field(p, c, PlaneWave{pi / 2, deg2rad(inc)}, PlaneWave{pi / 2, deg2rad(steer)}, f));
        const double cont = 256.0 * std::sin(deg2rad(inc)) * std::sin(deg2rad(steer));
        EXPECT_LE(q, cont * (1 + 1e-12));
        EXPECT_GE(20 * std::log10(q / cont), 20 * std::log10(2 / pi) - 1.0) << inc << " -> " << steer;
    }
}

TEST(ReradiatedField, DoublingCoherentApertureAdds6dB)
{
    RisPanel a = tile(16), b = tile(16);
    b.cols = 32;
    const double fa = std::abs(reradiated_field(a, RisConfig::uniform(16, 16), PlaneWave{}, PlaneWave{}, 3.5e9));
    const double fb = std::abs(reradiated_field(b, RisConfig::uniform(16, 32), PlaneWave{}, PlaneWave{}, 3.5e9));
    EXPECT_NEAR(20 * std::log10(fb / fa), 6.02, 0.1);
}

TEST(ReradiatedField, LossKnobScalesBothStates)
{
    RisPanel p = tile(4);
    p.loss_db = 2.0;
    const auto f = reradiated_field(p, RisConfig::uniform(4, 4, 1), PlaneWave{}, PlaneWave{}, 3.5e9);
    EXPECT_NEAR(20 * std::log10(std::abs(f) / 16.0), -2.0, 1e-12);
}

TEST(ReradiatedField, RejectsMismatchedConfig)
{
    EXPECT_THROW(reradiated_field(tile(4), RisConfig::uniform(4, 5), PlaneWave{}, PlaneWave{}, 3.5e9), ValidationError);
}

TEST(BeamPattern, UniformConfigIsSpecular)
{
    const auto angles = grid();
    const auto p = beam_pattern(tile(16), RisConfig::uniform(16, 16), 120.0, angles, 3.5e9);
    EXPECT_NEAR(argmax_angle(p, angles), 60.0, 0.5);
}

TEST(BeamPattern, MaximumIsExactlyZero)
{
    std::mt19937_64 rng(8);
    const auto angles = grid(1.0);
    for (int i = 0; i < 10; ++i)
    {
        const auto p = beam_pattern(tile(8), random_config(rng, 8, 8), 100.0, angles, 3.5e9);
        EXPECT_EQ(*std::max_element(p.begin(), p.end()), 0.0);
    }
}

TEST(BeamPattern, SteeringTargetsFrom60To135)
{
    // 45 deg is excluded here: its 1-bit twin lobe wins (covered by the acceptance suite)
    const auto angles = grid();
    RisPanel p = tile(16);
    for (double target = 60.0; target <= 135.0; target += 15.0)
    {
        const auto pattern = beam_pattern(p, steering_config(p, 120.0, target, 3.5e9), 120.0, angles, 3.5e9);
        EXPECT_NEAR(argmax_angle(pattern, angles), target, 3.0) << target;
    }
}

TEST(BeamPattern, FlipSymmetry)
{
    std::mt19937_64 rng(31);
    const auto angles = grid(1.0);
    RisPanel p = tile(16);
    for (int i = 0; i < 50; ++i)
    {
        const auto c = random_config(rng, 16, 16);
        const auto a = beam_pattern(p, c, 120.0, angles, 3.5e9);
        const auto b = beam_pattern(p, c.flipped(), 120.0, angles, 3.5e9);
        for (std::size_t k = 0; k < a.size(); ++k)
            EXPECT_NEAR(a[k], b[k], 1e-9);
    }
}

TEST(BeamPattern, GridValidation)
{
    const std::vector<double> empty;
    EXPECT_THROW(beam_pattern(tile(4), RisConfig::uniform(4, 4), 120.0, empty, 3.5e9), ValidationError);
    const std::vector<double> bad{10.0, 181.0};
    EXPECT_THROW(beam_pattern(tile(4), RisConfig::uniform(4, 4), 120.0, bad, 3.5e9), ValidationError);
}

TEST(ConfigText, RoundTrip)
{
    std::mt19937_64 rng(2);
    auto c = random_config(rng, 5, 7);
    EXPECT_EQ(parse_config(format_config(c)), c);
}

TEST(ConfigText, Layout)
{
    RisConfig c = RisConfig::uniform(2, 3, 0);
    c.bits[0][1] = 1;
    c.bits[1][5] = 1;
    EXPECT_EQ(format_config(c), "010\n000\n\n000\n001\n");
}

TEST(ConfigText, RejectsMalformedInput)
{
    EXPECT_THROW(parse_config("01\n012\n\n01\n01\n"), ValidationError);
    EXPECT_THROW(parse_config("01\n10\n\n011\n100\n"), ValidationError);
    EXPECT_THROW(parse_config("01\n10\n"), ValidationError);
}

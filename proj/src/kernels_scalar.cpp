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

#include "risim/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risim::kernels::scalar
{
    SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits)
    {
        if (re.size() != im.size() || re.size() != bits.size())
            throw std::invalid_argument("split_sum: length mismatch");

        double r0 = 0.0, i0 = 0.0, r1 = 0.0, i1 = 0.0;
        for (std::size_t n = 0; n < re.size(); ++n)
        {
            if (bits[n])
                r1 += re[n], i1 += im[n];
            else
                r0 += re[n], i0 += im[n];
        }
        return {{r0, i0}, {r1, i1}};
    }

    void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits)
    {
        const auto n_el = in.elements.x.size();
        if (in.elements.y.size() != n_el || in.elements.z.size() != n_el || bits.size() != n_el)
            throw std::invalid_argument("focus_bits: length mismatch");

        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double lo = 0.5 * std::numbers::pi;
        constexpr double hi = 1.5 * std::numbers::pi;
        const std::uint8_t inv = in.flip ? 1 : 0;

        for (std::size_t n = 0; n < n_el; ++n)
        {
            const double ax = in.elements.x[n] - in.tx[0], ay = in.elements.y[n] - in.tx[1], az = in.elements.z[n] - in.tx[2];
            const double bx = in.elements.x[n] - in.rx[0], by = in.elements.y[n] - in.rx[1], bz = in.elements.z[n] - in.rx[2];
            const double d1 = std::sqrt(ax * ax + ay * ay + az * az);
            const double d2 = std::sqrt(bx * bx + by * by + bz * bz);
            const double phase = std::fmod(in.wavenumber * (d1 + d2), two_pi);
            const std::uint8_t b = (phase >= lo && phase < hi) ? 1 : 0;
            bits[n] = b ^ inv;
        }
    }
}

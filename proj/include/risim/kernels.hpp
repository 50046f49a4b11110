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

#ifndef risim_kernels_H
#define risim_kernels_H

// Data-parallel inner loops of the RIS model. Every kernel has a scalar
// reference implementation and optional SIMD variants; the variant used by
// the library is selected once at runtime from the CPU features and can be
// pinned with set_simd_level() or the RISIM_SIMD environment variable
// ("scalar" or "avx2").

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace risim::kernels
{
    enum class SimdLevel
    {
        scalar,
        avx2
    };

    std::string_view to_string(SimdLevel level);

    // True when the variant is compiled in and supported by the running CPU
    bool simd_supported(SimdLevel level);

    // Currently selected variant
    SimdLevel simd_level();

    // Pin the variant; throws std::invalid_argument if unsupported
    void set_simd_level(SimdLevel level);

    // Sums of complex coefficients split by a 0/1 mask
    struct SplitSum
    {
        std::complex<double> zero; // Sum over entries with bit == 0
        std::complex<double> one;  // Sum over entries with bit == 1
    };

    // Element positions in structure-of-arrays layout
    struct PointsSoA
    {
        std::span<const double> x, y, z;
    };

    // Per-element focusing input for focus_bits
    struct FocusInput
    {
        PointsSoA elements;
        double tx[3];
        double rx[3];
        double wavenumber; // [rad/m]
        bool flip;
    };

    // Scalar reference implementations
    namespace scalar
    {
        SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits);

        // bit_n = 1 iff (k * (|e_n - tx| + |e_n - rx|)) mod 2pi lies in [pi/2, 3pi/2); inverted when flip is set
        void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits);
    }

#if defined(RISIM_HAVE_AVX2)
    namespace avx2
    {
        SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits);
        void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits);
    }
#endif

    // Dispatching entry points
    SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits);
    void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits);
}

#endif

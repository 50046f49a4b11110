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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace risim::kernels
{
    std::string_view to_string(SimdLevel level)
    {
        return level == SimdLevel::avx2 ? "avx2" : "scalar";
    }

    bool simd_supported(SimdLevel level)
    {
        switch (level)
        {
        case SimdLevel::scalar:
            return true;
        case SimdLevel::avx2:
#if defined(RISIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        }
        return false;
    }

    namespace
    {
        SimdLevel detect()
        {
            if (const char *env = std::getenv("RISIM_SIMD"))
            {
                const std::string v(env);
                if (v == "scalar")
                    return SimdLevel::scalar;
                if (v == "avx2" && simd_supported(SimdLevel::avx2))
                    return SimdLevel::avx2;
            }
            return simd_supported(SimdLevel::avx2) ? SimdLevel::avx2 : SimdLevel::scalar;
        }

        std::atomic<SimdLevel> &current()
        {
            static std::atomic<SimdLevel> level{detect()};
            return level;
        }
    }

    SimdLevel simd_level() { return current().load(std::memory_order_relaxed); }

    void set_simd_level(SimdLevel level)
    {
        if (!simd_supported(level))
            throw std::invalid_argument("SIMD level '" + std::string(to_string(level)) + "' is not supported on this machine");
        current().store(level, std::memory_order_relaxed);
    }

    SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits)
    {
#if defined(RISIM_HAVE_AVX2)
        if (simd_level() == SimdLevel::avx2)
            return avx2::split_sum(re, im, bits);
#endif
        return scalar::split_sum(re, im, bits);
    }

    void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits)
    {
#if defined(RISIM_HAVE_AVX2)
        if (simd_level() == SimdLevel::avx2)
            return avx2::focus_bits(in, bits);
#endif
        scalar::focus_bits(in, bits);
    }
}

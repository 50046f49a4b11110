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

#include <immintrin.h>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace risim::kernels::avx2
{
    namespace
    {
        // 4 bytes of 0/1 flags to a 4 x 64 bit lane mask
        inline __m256d load_mask4(const std::uint8_t *bits)
        {
            int packed;
            std::memcpy(&packed, bits, 4);
            const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
            return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
        }

        inline double hsum(__m256d v)
        {
            const __m128d lo = _mm256_castpd256_pd128(v);
            const __m128d hi = _mm256_extractf128_pd(v, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }
    }

    SplitSum split_sum(std::span<const double> re, std::span<const double> im, std::span<const std::uint8_t> bits)
    {
        if (re.size() != im.size() || re.size() != bits.size())
            throw std::invalid_argument("split_sum: length mismatch");

        const std::size_t n = re.size();
        const std::size_t n8 = n - n % 8;
        const __m256d zero = _mm256_setzero_pd();

        // Two independent accumulator sets per output to hide add latency
        __m256d r0a = zero, i0a = zero, r1a = zero, i1a = zero;
        __m256d r0b = zero, i0b = zero, r1b = zero, i1b = zero;

        for (std::size_t k = 0; k < n8; k += 8)
        {
            const __m256d ma = load_mask4(bits.data() + k);
            const __m256d mb = load_mask4(bits.data() + k + 4);
            const __m256d ra = _mm256_loadu_pd(re.data() + k), rb = _mm256_loadu_pd(re.data() + k + 4);
            const __m256d ia = _mm256_loadu_pd(im.data() + k), ib = _mm256_loadu_pd(im.data() + k + 4);

            r1a = _mm256_add_pd(r1a, _mm256_and_pd(ma, ra));
            i1a = _mm256_add_pd(i1a, _mm256_and_pd(ma, ia));
            r0a = _mm256_add_pd(r0a, _mm256_andnot_pd(ma, ra));
            i0a = _mm256_add_pd(i0a, _mm256_andnot_pd(ma, ia));

            r1b = _mm256_add_pd(r1b, _mm256_and_pd(mb, rb));
            i1b = _mm256_add_pd(i1b, _mm256_and_pd(mb, ib));
            r0b = _mm256_add_pd(r0b, _mm256_andnot_pd(mb, rb));
            i0b = _mm256_add_pd(i0b, _mm256_andnot_pd(mb, ib));
        }

        SplitSum out{{hsum(_mm256_add_pd(r0a, r0b)), hsum(_mm256_add_pd(i0a, i0b))},
                     {hsum(_mm256_add_pd(r1a, r1b)), hsum(_mm256_add_pd(i1a, i1b))}};

        if (n8 < n)
        {
            const auto tail = scalar::split_sum(re.subspan(n8), im.subspan(n8), bits.subspan(n8));
            out.zero += tail.zero;
            out.one += tail.one;
        }
        return out;
    }

    void focus_bits(const FocusInput &in, std::span<std::uint8_t> bits)
    {
        const auto n = in.elements.x.size();
        if (in.elements.y.size() != n || in.elements.z.size() != n || bits.size() != n)
            throw std::invalid_argument("focus_bits: length mismatch");

        constexpr double two_pi = 2.0 * std::numbers::pi;
        const __m256d v_two_pi = _mm256_set1_pd(two_pi);
        const __m256d v_inv_two_pi = _mm256_set1_pd(1.0 / two_pi);
        const __m256d v_lo = _mm256_set1_pd(0.5 * std::numbers::pi);
        const __m256d v_hi = _mm256_set1_pd(1.5 * std::numbers::pi);
        const __m256d v_k = _mm256_set1_pd(in.wavenumber);
        const __m256d tx = _mm256_set1_pd(in.tx[0]), ty = _mm256_set1_pd(in.tx[1]), tz = _mm256_set1_pd(in.tx[2]);
        const __m256d rx = _mm256_set1_pd(in.rx[0]), ry = _mm256_set1_pd(in.rx[1]), rz = _mm256_set1_pd(in.rx[2]);
        const int inv = in.flip ? 0xF : 0;

        const std::size_t n4 = n - n % 4;
        for (std::size_t k = 0; k < n4; k += 4)
        {
            const __m256d ex = _mm256_loadu_pd(in.elements.x.data() + k);
            const __m256d ey = _mm256_loadu_pd(in.elements.y.data() + k);
            const __m256d ez = _mm256_loadu_pd(in.elements.z.data() + k);

            // Same operation order as the scalar path (no contraction), so distances are bit-identical
            __m256d ax = _mm256_sub_pd(ex, tx), ay = _mm256_sub_pd(ey, ty), az = _mm256_sub_pd(ez, tz);
            __m256d bx = _mm256_sub_pd(ex, rx), by = _mm256_sub_pd(ey, ry), bz = _mm256_sub_pd(ez, rz);
            __m256d d1 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ax, ax), _mm256_mul_pd(ay, ay)), _mm256_mul_pd(az, az));
            __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(bx, bx), _mm256_mul_pd(by, by)), _mm256_mul_pd(bz, bz));
            d1 = _mm256_sqrt_pd(d1);
            d2 = _mm256_sqrt_pd(d2);
            const __m256d phase = _mm256_mul_pd(v_k, _mm256_add_pd(d1, d2));

            // The remainder of fmod is exactly representable, so the fused form reproduces it
            // whenever the quotient is right. A quotient off by one only happens next to a
            // multiple of 2pi, where both paths yield bit 0.
            const __m256d q = _mm256_floor_pd(_mm256_mul_pd(phase, v_inv_two_pi));
            __m256d rem = _mm256_fnmadd_pd(q, v_two_pi, phase);
            rem = _mm256_add_pd(rem, _mm256_and_pd(_mm256_cmp_pd(rem, _mm256_setzero_pd(), _CMP_LT_OQ), v_two_pi));

            const __m256d in_band = _mm256_and_pd(_mm256_cmp_pd(rem, v_lo, _CMP_GE_OQ), _mm256_cmp_pd(rem, v_hi, _CMP_LT_OQ));
            const int m = _mm256_movemask_pd(in_band) ^ inv;
            bits[k + 0] = static_cast<std::uint8_t>(m & 1);
            bits[k + 1] = static_cast<std::uint8_t>((m >> 1) & 1);
            bits[k + 2] = static_cast<std::uint8_t>((m >> 2) & 1);
            bits[k + 3] = static_cast<std::uint8_t>((m >> 3) & 1);
        }

        if (n4 < n)
        {
            FocusInput tail = in;
            tail.elements = {in.elements.x.subspan(n4), in.elements.y.subspan(n4), in.elements.z.subspan(n4)};
            scalar::focus_bits(tail, bits.subspan(n4));
        }
    }
}

// Copyright 2026 The DST Augment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 only; callers reach it through the dispatch table
// after a CPU check. No FMA: results must match the scalar kernels exactly.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "dst/simd/kernels.hpp"
#include "dst/simd/trilinear.hpp"

namespace dst::simd {
namespace {

inline __m256 clamp01(__m256 v) {
    return _mm256_min_ps(_mm256_max_ps(v, _mm256_setzero_ps()), _mm256_set1_ps(1.0f));
}

void convolve_strided(const float* in, float* out, std::size_t outer, std::size_t outer_stride,
                      std::size_t line_len, std::size_t pos_stride, const AxisTaps& taps) {
    for (std::size_t o = 0; o < outer; ++o) {
        const float* src = in + o * outer_stride;
        float* dst = out + o * outer_stride;
        for (int p = 0; p < taps.length; ++p) {
            const float* w = taps.weights + static_cast<std::size_t>(p) * taps.stride;
            const float* s0 = src + static_cast<std::size_t>(p + taps.first[p]) * pos_stride;
            const int count = taps.count[p];
            float* acc_line = dst + static_cast<std::size_t>(p) * pos_stride;
            std::size_t i = 0;
            for (; i + 8 <= line_len; i += 8) {
                __m256 acc = _mm256_setzero_ps();
                for (int k = 0; k < count; ++k) {
                    const __m256 v = _mm256_loadu_ps(s0 + static_cast<std::size_t>(k) * pos_stride + i);
                    acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(w[k]), v));
                }
                _mm256_storeu_ps(acc_line + i, acc);
            }
            for (; i < line_len; ++i) {
                float acc = 0.0f;
                for (int k = 0; k < count; ++k)
                    acc = acc + w[k] * s0[static_cast<std::size_t>(k) * pos_stride + i];
                acc_line[i] = acc;
            }
        }
    }
}

void convolve_rows(const float* in, float* out, std::size_t rows, std::size_t nx,
                   const AxisTaps& taps) {
    const int width = 2 * taps.radius + 1;
    const float* wi = taps.weights + static_cast<std::size_t>(taps.interior_begin) * taps.stride;
    for (std::size_t row = 0; row < rows; ++row) {
        const float* src = in + row * nx;
        float* dst = out + row * nx;
        auto scalar_at = [&](int p) {
            const float* w = taps.weights + static_cast<std::size_t>(p) * taps.stride;
            const float* s = src + p + taps.first[p];
            float acc = 0.0f;
            for (int k = 0; k < taps.count[p]; ++k) acc = acc + w[k] * s[k];
            dst[p] = acc;
        };
        int p = 0;
        for (; p < taps.interior_begin; ++p) scalar_at(p);
        for (; p + 8 <= taps.interior_end; p += 8) {
            const float* s = src + p - taps.radius;
            __m256 acc = _mm256_setzero_ps();
            for (int k = 0; k < width; ++k)
                acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_set1_ps(wi[k]), _mm256_loadu_ps(s + k)));
            _mm256_storeu_ps(dst + p, acc);
        }
        for (; p < taps.length; ++p) scalar_at(p);
    }
}

void convolve_axis(const float* in, float* out, Dims3 dims, int axis, const AxisTaps& taps) {
    const std::size_t nx = static_cast<std::size_t>(dims.x);
    const std::size_t ny = static_cast<std::size_t>(dims.y);
    const std::size_t nz = static_cast<std::size_t>(dims.z);
    if (axis == 0) {
        convolve_rows(in, out, ny * nz, nx, taps);
    } else if (axis == 1) {
        convolve_strided(in, out, nz, nx * ny, nx, nx, taps);
    } else {
        convolve_strided(in, out, 1, 0, nx * ny, nx * ny, taps);
    }
}

// In-range mask for integer lanes: 0 <= i < n.
inline __m256i in_range(__m256i i, __m256i n) {
    return _mm256_and_si256(_mm256_cmpgt_epi32(i, _mm256_set1_epi32(-1)), _mm256_cmpgt_epi32(n, i));
}

inline __m256 gather(const float* base, __m256i index, __m256i mask, __m256 pad) {
    return _mm256_mask_i32gather_ps(pad, base, index, _mm256_castsi256_ps(mask), 4);
}

inline __m256 lerp(__m256 a, __m256 b, __m256 t) {
    return _mm256_add_ps(a, _mm256_mul_ps(t, _mm256_sub_ps(b, a)));
}

void warp_trilinear(const CuboidView& src, const float* cx, const float* cy, const float* cz,
                    std::size_t count, float pad, float* out) {
    const __m256 lo_clamp = _mm256_set1_ps(-2.0f);
    const __m256 hx = _mm256_set1_ps(static_cast<float>(src.full.x) + 1.0f);
    const __m256 hy = _mm256_set1_ps(static_cast<float>(src.full.y) + 1.0f);
    const __m256 hz = _mm256_set1_ps(static_cast<float>(src.full.z) + 1.0f);
    const __m256i nx = _mm256_set1_epi32(src.full.x);
    const __m256i ny = _mm256_set1_epi32(src.full.y);
    const __m256i nz = _mm256_set1_epi32(src.full.z);
    const __m256i lox = _mm256_set1_epi32(src.lo.x);
    const __m256i loy = _mm256_set1_epi32(src.lo.y);
    const __m256i loz = _mm256_set1_epi32(src.lo.z);
    const std::int32_t sy = src.extent.x;
    const std::int32_t sz = src.extent.x * src.extent.y;
    const __m256i vsy = _mm256_set1_epi32(sy);
    const __m256i vsz = _mm256_set1_epi32(sz);
    const __m256i one = _mm256_set1_epi32(1);
    const __m256 vpad = _mm256_set1_ps(pad);
    constexpr int kFloor = _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC;

    std::size_t i = 0;
    for (; i + 8 <= count; i += 8) {
        const __m256 x = _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(cx + i), lo_clamp), hx);
        const __m256 y = _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(cy + i), lo_clamp), hy);
        const __m256 z = _mm256_min_ps(_mm256_max_ps(_mm256_loadu_ps(cz + i), lo_clamp), hz);
        const __m256 fx = _mm256_round_ps(x, kFloor);
        const __m256 fy = _mm256_round_ps(y, kFloor);
        const __m256 fz = _mm256_round_ps(z, kFloor);
        const __m256i ix = _mm256_cvttps_epi32(fx);
        const __m256i iy = _mm256_cvttps_epi32(fy);
        const __m256i iz = _mm256_cvttps_epi32(fz);
        const __m256 tx = _mm256_sub_ps(x, fx);
        const __m256 ty = _mm256_sub_ps(y, fy);
        const __m256 tz = _mm256_sub_ps(z, fz);

        const __m256i x0 = in_range(ix, nx);
        const __m256i x1 = in_range(_mm256_add_epi32(ix, one), nx);
        const __m256i y0 = in_range(iy, ny);
        const __m256i y1 = in_range(_mm256_add_epi32(iy, one), ny);
        const __m256i z0 = in_range(iz, nz);
        const __m256i z1 = in_range(_mm256_add_epi32(iz, one), nz);

        const __m256i base = _mm256_add_epi32(
            _mm256_sub_epi32(ix, lox),
            _mm256_add_epi32(_mm256_mullo_epi32(vsy, _mm256_sub_epi32(iy, loy)),
                             _mm256_mullo_epi32(vsz, _mm256_sub_epi32(iz, loz))));
        const __m256i b_y = _mm256_add_epi32(base, vsy);
        const __m256i b_z = _mm256_add_epi32(base, vsz);
        const __m256i b_yz = _mm256_add_epi32(b_y, vsz);

        const __m256i y0z0 = _mm256_and_si256(y0, z0);
        const __m256i y1z0 = _mm256_and_si256(y1, z0);
        const __m256i y0z1 = _mm256_and_si256(y0, z1);
        const __m256i y1z1 = _mm256_and_si256(y1, z1);

        const float* d = src.data;
        const __m256 v000 = gather(d, base, _mm256_and_si256(x0, y0z0), vpad);
        const __m256 v100 = gather(d, _mm256_add_epi32(base, one), _mm256_and_si256(x1, y0z0), vpad);
        const __m256 v010 = gather(d, b_y, _mm256_and_si256(x0, y1z0), vpad);
        const __m256 v110 = gather(d, _mm256_add_epi32(b_y, one), _mm256_and_si256(x1, y1z0), vpad);
        const __m256 v001 = gather(d, b_z, _mm256_and_si256(x0, y0z1), vpad);
        const __m256 v101 = gather(d, _mm256_add_epi32(b_z, one), _mm256_and_si256(x1, y0z1), vpad);
        const __m256 v011 = gather(d, b_yz, _mm256_and_si256(x0, y1z1), vpad);
        const __m256 v111 = gather(d, _mm256_add_epi32(b_yz, one), _mm256_and_si256(x1, y1z1), vpad);

        const __m256 c00 = lerp(v000, v100, tx);
        const __m256 c10 = lerp(v010, v110, tx);
        const __m256 c01 = lerp(v001, v101, tx);
        const __m256 c11 = lerp(v011, v111, tx);
        const __m256 c0 = lerp(c00, c10, ty);
        const __m256 c1 = lerp(c01, c11, ty);
        _mm256_storeu_ps(out + i, lerp(c0, c1, tz));
    }
    for (; i < count; ++i) out[i] = trilinear_at(src, cx[i], cy[i], cz[i], pad);
}

void affine_clamp(const float* in, float* out, std::size_t n, float scale, float shift) {
    const __m256 a = _mm256_set1_ps(scale);
    const __m256 b = _mm256_set1_ps(shift);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i, clamp01(_mm256_add_ps(_mm256_mul_ps(a, _mm256_loadu_ps(in + i)), b)));
    for (; i < n; ++i) out[i] = simd::clamp01(scale * in[i] + shift);
}

void unsharp_clamp(const float* in, const float* blurred, float* out, std::size_t n,
                   float strength) {
    const __m256 s = _mm256_set1_ps(strength);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 v = _mm256_loadu_ps(in + i);
        const __m256 d = _mm256_sub_ps(v, _mm256_loadu_ps(blurred + i));
        _mm256_storeu_ps(out + i, clamp01(_mm256_add_ps(v, _mm256_mul_ps(s, d))));
    }
    for (; i < n; ++i) out[i] = simd::clamp01(in[i] + strength * (in[i] - blurred[i]));
}

void add_clamp(const float* in, const float* delta, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
        _mm256_storeu_ps(out + i,
                         clamp01(_mm256_add_ps(_mm256_loadu_ps(in + i), _mm256_loadu_ps(delta + i))));
    for (; i < n; ++i) out[i] = simd::clamp01(in[i] + delta[i]);
}

void clamp_unit(const float* in, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) _mm256_storeu_ps(out + i, clamp01(_mm256_loadu_ps(in + i)));
    for (; i < n; ++i) out[i] = simd::clamp01(in[i]);
}

constexpr Kernels kAvx2{
    Isa::avx2, convolve_axis, warp_trilinear, affine_clamp, unsharp_clamp, add_clamp, clamp_unit,
};

}  // namespace

const Kernels& avx2_kernel_table() noexcept { return kAvx2; }

}  // namespace dst::simd

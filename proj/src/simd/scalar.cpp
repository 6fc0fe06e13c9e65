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

#include <cstddef>
#include <vector>

#include "dst/simd/kernels.hpp"
#include "dst/simd/trilinear.hpp"

namespace dst::simd {
namespace {

// Convolves `lines` independent lines laid out `line_len` floats apart;
// consecutive positions along the axis are `pos_stride` floats apart.
// Accumulates position by position so each output element sees
// acc = 0 + w0*v0 + w1*v1 + ... in tap order.
void convolve_strided(const float* in, float* out, std::size_t outer, std::size_t outer_stride,
                      std::size_t line_len, std::size_t pos_stride, const AxisTaps& taps) {
    for (std::size_t o = 0; o < outer; ++o) {
        const float* src = in + o * outer_stride;
        float* dst = out + o * outer_stride;
        for (int p = 0; p < taps.length; ++p) {
            const float* w = taps.weights + static_cast<std::size_t>(p) * taps.stride;
            const int first = p + taps.first[p];
            const int count = taps.count[p];
            float* acc = dst + static_cast<std::size_t>(p) * pos_stride;
            for (std::size_t i = 0; i < line_len; ++i) acc[i] = 0.0f;
            for (int k = 0; k < count; ++k) {
                const float* s = src + static_cast<std::size_t>(first + k) * pos_stride;
                const float wk = w[k];
                for (std::size_t i = 0; i < line_len; ++i) acc[i] = acc[i] + wk * s[i];
            }
        }
    }
}

void convolve_axis(const float* in, float* out, Dims3 dims, int axis, const AxisTaps& taps) {
    const std::size_t nx = static_cast<std::size_t>(dims.x);
    const std::size_t ny = static_cast<std::size_t>(dims.y);
    const std::size_t nz = static_cast<std::size_t>(dims.z);
    if (axis == 0) {
        for (std::size_t row = 0; row < ny * nz; ++row) {
            const float* src = in + row * nx;
            float* dst = out + row * nx;
            for (int p = 0; p < taps.length; ++p) {
                const float* w = taps.weights + static_cast<std::size_t>(p) * taps.stride;
                const float* s = src + p + taps.first[p];
                float acc = 0.0f;
                for (int k = 0; k < taps.count[p]; ++k) acc = acc + w[k] * s[k];
                dst[p] = acc;
            }
        }
    } else if (axis == 1) {
        convolve_strided(in, out, nz, nx * ny, nx, nx, taps);
    } else {
        convolve_strided(in, out, 1, 0, nx * ny, nx * ny, taps);
    }
}

void warp_trilinear(const CuboidView& src, const float* cx, const float* cy, const float* cz,
                    std::size_t count, float pad, float* out) {
    for (std::size_t i = 0; i < count; ++i) out[i] = trilinear_at(src, cx[i], cy[i], cz[i], pad);
}

void affine_clamp(const float* in, float* out, std::size_t n, float scale, float shift) {
    for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(scale * in[i] + shift);
}

void unsharp_clamp(const float* in, const float* blurred, float* out, std::size_t n,
                   float strength) {
    for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(in[i] + strength * (in[i] - blurred[i]));
}

void add_clamp(const float* in, const float* delta, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(in[i] + delta[i]);
}

void clamp_unit(const float* in, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = clamp01(in[i]);
}

constexpr Kernels kScalar{
    Isa::scalar, convolve_axis, warp_trilinear, affine_clamp, unsharp_clamp, add_clamp, clamp_unit,
};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace dst::simd

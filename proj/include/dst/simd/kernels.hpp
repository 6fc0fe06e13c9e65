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

#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version
// and, where the target supports it, an AVX2 version. The two must agree
// bit for bit: same operation order, no fused multiply-add, and the scalar
// min/max helpers below reproduce MINPS/MAXPS operand semantics.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "dst/volume.hpp"

namespace dst::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

// max_ps(a, b) == (a > b ? a : b); matches _mm256_max_ps for non-NaN input,
// including which zero is returned for +0/-0. Internal linkage keeps the
// copies compiled into the AVX2 translation unit out of scalar callers.
static inline float max_ps(float a, float b) noexcept { return a > b ? a : b; }
static inline float min_ps(float a, float b) noexcept { return a < b ? a : b; }
static inline float clamp01(float v) noexcept { return min_ps(max_ps(v, 0.0f), 1.0f); }

// Per-position taps for a 1-D convolution along one axis of length n.
// Row p covers source positions p + first .. p + first + count - 1, all
// in-grid; weights are renormalized over those taps.
//
// Rows in [interior_begin, interior_end) use every tap (first == -radius,
// count == 2 * radius + 1) and hold bitwise-identical weights, so a kernel
// may vectorize across consecutive positions there.
struct AxisTaps {
    const float* weights = nullptr;  // `length` rows of `stride` floats
    const std::int32_t* first = nullptr;
    const std::int32_t* count = nullptr;
    int stride = 0;
    int length = 0;
    int radius = 0;
    int interior_begin = 0;
    int interior_end = 0;
};

// Minimal cuboid view of a source volume: `data` holds the voxels
// [lo, lo + extent) of a full grid of size `full`.
struct CuboidView {
    const float* data = nullptr;
    Dims3 extent{};
    Dims3 lo{};
    Dims3 full{};
};

struct Kernels {
    Isa isa;

    // out = conv(in) along `axis` of a dims-sized x-fastest buffer.
    void (*convolve_axis)(const float* in, float* out, Dims3 dims, int axis, const AxisTaps& taps);

    // Trilinear sampling of `count` source coordinates (SoA) from a cuboid.
    // Neighbours outside [0, full) read `pad`.
    void (*warp_trilinear)(const CuboidView& src, const float* cx, const float* cy,
                           const float* cz, std::size_t count, float pad, float* out);

    // out = clamp01(scale * in + shift)
    void (*affine_clamp)(const float* in, float* out, std::size_t n, float scale, float shift);

    // out = clamp01(in + strength * (in - blurred))
    void (*unsharp_clamp)(const float* in, const float* blurred, float* out, std::size_t n,
                          float strength);

    // out = clamp01(in + delta[i])
    void (*add_clamp)(const float* in, const float* delta, float* out, std::size_t n);

    // out = clamp01(in)
    void (*clamp_unit)(const float* in, float* out, std::size_t n);
};

const Kernels& scalar_kernels() noexcept;

// nullptr when the build or the CPU lacks AVX2.
const Kernels* avx2_kernels() noexcept;

// Best ISA the running CPU supports.
Isa detected_isa() noexcept;

// ISA used by the library. Defaults to detected_isa(); the DST_ISA
// environment variable (scalar|avx2) overrides it at first use.
Isa active_isa() noexcept;

// Forces an ISA for the rest of the process. Throws InvalidParameter if
// the requested ISA is unavailable.
void set_active_isa(Isa isa);

const Kernels& kernels(Isa isa);
const Kernels& active_kernels() noexcept;

}  // namespace dst::simd

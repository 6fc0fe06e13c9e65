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

#include <cmath>
#include <cstdint>

#include "dst/simd/kernels.hpp"

namespace dst::simd {

// The one trilinear formula used by point sampling and by every warp
// kernel. Coordinates are clamped to [-2, n+1] first: beyond that range
// both neighbours on the axis are padding anyway, and the clamp keeps the
// integer conversion in range. Blends use the a + t * (b - a) form, which
// returns `a` exactly at t == 0 and stays inside [0,1] for [0,1] inputs.
static inline float trilinear_at(const CuboidView& src, float cx, float cy, float cz, float pad) noexcept {
    cx = min_ps(max_ps(cx, -2.0f), static_cast<float>(src.full.x) + 1.0f);
    cy = min_ps(max_ps(cy, -2.0f), static_cast<float>(src.full.y) + 1.0f);
    cz = min_ps(max_ps(cz, -2.0f), static_cast<float>(src.full.z) + 1.0f);

    const float fx = std::floor(cx);
    const float fy = std::floor(cy);
    const float fz = std::floor(cz);
    const std::int32_t ix = static_cast<std::int32_t>(fx);
    const std::int32_t iy = static_cast<std::int32_t>(fy);
    const std::int32_t iz = static_cast<std::int32_t>(fz);
    const float tx = cx - fx;
    const float ty = cy - fy;
    const float tz = cz - fz;

    const bool x0 = ix >= 0 && ix < src.full.x;
    const bool x1 = ix + 1 >= 0 && ix + 1 < src.full.x;
    const bool y0 = iy >= 0 && iy < src.full.y;
    const bool y1 = iy + 1 >= 0 && iy + 1 < src.full.y;
    const bool z0 = iz >= 0 && iz < src.full.z;
    const bool z1 = iz + 1 >= 0 && iz + 1 < src.full.z;

    const std::int32_t sy = src.extent.x;
    const std::int32_t sz = src.extent.x * src.extent.y;
    const std::int32_t base = (ix - src.lo.x) + sy * (iy - src.lo.y) + sz * (iz - src.lo.z);
    const float* d = src.data;

    const float v000 = (x0 && y0 && z0) ? d[base] : pad;
    const float v100 = (x1 && y0 && z0) ? d[base + 1] : pad;
    const float v010 = (x0 && y1 && z0) ? d[base + sy] : pad;
    const float v110 = (x1 && y1 && z0) ? d[base + sy + 1] : pad;
    const float v001 = (x0 && y0 && z1) ? d[base + sz] : pad;
    const float v101 = (x1 && y0 && z1) ? d[base + sz + 1] : pad;
    const float v011 = (x0 && y1 && z1) ? d[base + sz + sy] : pad;
    const float v111 = (x1 && y1 && z1) ? d[base + sz + sy + 1] : pad;

    const float c00 = v000 + tx * (v100 - v000);
    const float c10 = v010 + tx * (v110 - v010);
    const float c01 = v001 + tx * (v101 - v001);
    const float c11 = v011 + tx * (v111 - v011);
    const float c0 = c00 + ty * (c10 - c00);
    const float c1 = c01 + ty * (c11 - c01);
    return c0 + tz * (c1 - c0);
}

}  // namespace dst::simd

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

#include "dst/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dst/errors.hpp"
#include "dst/gaussian.hpp"

namespace dst {

std::array<double, 9> rotation_matrix(const std::array<double, 3>& euler_deg) {
    constexpr double kDeg = std::numbers::pi / 180.0;
    const double cx = std::cos(euler_deg[0] * kDeg), sx = std::sin(euler_deg[0] * kDeg);
    const double cy = std::cos(euler_deg[1] * kDeg), sy = std::sin(euler_deg[1] * kDeg);
    const double cz = std::cos(euler_deg[2] * kDeg), sz = std::sin(euler_deg[2] * kDeg);
    // Rz * Ry * Rx
    return {
        cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
        sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
        -sy,     cy * sx,                cy * cx,
    };
}

DisplacementField DisplacementField::zero(Dims3 dims) {
    const std::size_t n = dims.voxels();
    return DisplacementField{dims, std::vector<float>(n, 0.0f), std::vector<float>(n, 0.0f),
                             std::vector<float>(n, 0.0f)};
}

DisplacementField make_displacement_field(Dims3 dims, double sigma, double alpha,
                                          const Substream& stream, const simd::Kernels& k) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw InvalidParameter("deformation alpha must be non-negative");
    if (alpha == 0.0) return DisplacementField::zero(dims);
    if (!(sigma > 0.0)) throw InvalidParameter("deformation sigma must be positive");

    const std::size_t n = dims.voxels();
    std::vector<float> noise(3 * n);
    stream.lane(Lane::payload).fill_normal(noise, 1.0);

    const float a = static_cast<float>(alpha);
    auto component = [&](std::size_t c) {
        std::vector<float> s = smooth_separable(
            std::span<const float>(noise).subspan(c * n, n), dims, sigma, k);
        for (float& v : s) v *= a;
        return s;
    };
    DisplacementField f;
    f.dims = dims;
    f.dx = component(0);
    f.dy = component(1);
    f.dz = component(2);
    return f;
}

Cuboid bounding_cuboid(const WarpGrid& grid) {
    Cuboid c;
    if (grid.x.empty()) return c;
    int lo[3], hi[3];
    const std::vector<float>* axes[3] = {&grid.x, &grid.y, &grid.z};
    for (int a = 0; a < 3; ++a) {
        const auto [mn, mx] = std::minmax_element(axes[a]->begin(), axes[a]->end());
        const double l = std::floor(static_cast<double>(*mn)) - 1.0;
        const double h = std::ceil(static_cast<double>(*mx)) + 1.0;
        const double n = grid.input_dims[a];
        lo[a] = static_cast<int>(std::clamp(l, 0.0, n));
        hi[a] = static_cast<int>(std::clamp(h, -1.0, n - 1.0));
        if (l > n - 1.0 || h < 0.0 || lo[a] > hi[a]) return c;
    }
    c.lo = Dims3{lo[0], lo[1], lo[2]};
    c.hi = Dims3{hi[0], hi[1], hi[2]};
    c.empty = false;
    return c;
}

WarpGrid build_warp_grid(const SpatialParams& params, const DisplacementField& field,
                         Dims3 input_dims) {
    const Dims3 d = params.crop_dims;
    if (d.x < 1 || d.y < 1 || d.z < 1) throw InvalidParameter("crop dims must be at least 1");
    if (field.dims != d) throw InvalidParameter("displacement field dims must equal crop dims");
    if (input_dims.x < 1 || input_dims.y < 1 || input_dims.z < 1)
        throw InvalidInput("input dims must be at least 1");

    const std::array<double, 9> r = rotation_matrix(params.euler_deg);
    const double s = params.scale;
    const double gx0 = (d.x - 1) / 2.0, gy0 = (d.y - 1) / 2.0, gz0 = (d.z - 1) / 2.0;
    const auto& c = params.crop_center;

    WarpGrid grid;
    grid.dims = d;
    grid.input_dims = input_dims;
    const std::size_t n = d.voxels();
    grid.x.resize(n);
    grid.y.resize(n);
    grid.z.resize(n);

    std::size_t i = 0;
    for (int gz = 0; gz < d.z; ++gz) {
        const double pz = gz - gz0;
        for (int gy = 0; gy < d.y; ++gy) {
            const double py = gy - gy0;
            for (int gx = 0; gx < d.x; ++gx, ++i) {
                const double px = gx - gx0;
                const double qx = r[0] * px + r[1] * py + r[2] * pz;
                const double qy = r[3] * px + r[4] * py + r[5] * pz;
                const double qz = r[6] * px + r[7] * py + r[8] * pz;
                grid.x[i] = static_cast<float>(c[0] + (s * qx + field.dx[i]));
                grid.y[i] = static_cast<float>(c[1] + (s * qy + field.dy[i]));
                grid.z[i] = static_cast<float>(c[2] + (s * qz + field.dz[i]));
            }
        }
    }
    grid.cuboid = bounding_cuboid(grid);
    return grid;
}

Volume warp_image(const Volume& v, const WarpGrid& grid, const simd::Kernels& k) {
    if (v.dims() != grid.input_dims)
        throw InvalidInput("warp grid was built for " + to_string(grid.input_dims) +
                           " but the volume is " + to_string(v.dims()));
    const Cuboid& cub = grid.cuboid;
    const Dims3 ext = cub.extent();

    // Copy the cuboid into a dense buffer; interpolation never touches the
    // rest of the volume.
    std::vector<float> block(std::max<std::size_t>(ext.voxels(), 1), 0.0f);
    if (!cub.empty) {
        float* dst = block.data();
        for (int z = cub.lo.z; z <= cub.hi.z; ++z)
            for (int y = cub.lo.y; y <= cub.hi.y; ++y) {
                const float* row = v.data().data() + linear_index(v.dims(), cub.lo.x, y, z);
                dst = std::copy(row, row + ext.x, dst);
            }
    }
    const simd::CuboidView view{block.data(), ext, cub.lo, v.dims()};
    std::vector<float> out(grid.dims.voxels());
    k.warp_trilinear(view, grid.x.data(), grid.y.data(), grid.z.data(), out.size(), 0.0f, out.data());
    return Volume(grid.dims, v.spacing(), std::move(out), v.normalized());
}

LabelMap warp_label(const LabelMap& l, const WarpGrid& grid) {
    if (l.dims() != grid.input_dims)
        throw InvalidInput("warp grid was built for " + to_string(grid.input_dims) +
                           " but the label map is " + to_string(l.dims()));
    std::vector<label_t> out(grid.dims.voxels());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = nearest_sample(l, grid.at(i), 0);
    return LabelMap(grid.dims, l.spacing(), std::move(out));
}

SpatialParams random_crop_params(Dims3 input_dims, Dims3 crop_dims, Substream& stream) {
    if (crop_dims.x < 1 || crop_dims.y < 1 || crop_dims.z < 1)
        throw InvalidParameter("crop dims must be at least 1");
    SpatialParams p;
    p.crop_dims = crop_dims;
    for (int a = 0; a < 3; ++a) {
        const int n = input_dims[a];
        const int w = crop_dims[a];
        const std::uint64_t choices = n >= w ? static_cast<std::uint64_t>(n - w + 1) : 1;
        const auto pick = static_cast<long long>(stream.below(choices));
        const long long offset = n >= w ? pick : -static_cast<long long>((w - n) / 2);
        p.crop_center[static_cast<std::size_t>(a)] = static_cast<double>(offset) + (w - 1) / 2.0;
    }
    return p;
}

}  // namespace dst

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

// Fused spatial transform: one w x h x d grid of source coordinates that
// combines rotation, scaling, elastic deformation and cropping, followed by
// a single interpolation pass restricted to the grid's bounding cuboid.

#include <array>
#include <vector>

#include "dst/random.hpp"
#include "dst/simd/kernels.hpp"
#include "dst/volume.hpp"

namespace dst {

struct SpatialParams {
    std::array<double, 3> euler_deg{0.0, 0.0, 0.0};  // about x, y, z
    double scale = 1.0;
    double deform_sigma = 0.0;  // 0 when deformation is inactive
    double deform_alpha = 0.0;
    Dims3 crop_dims{};
    std::array<double, 3> crop_center{0.0, 0.0, 0.0};  // input voxel space

    friend bool operator==(const SpatialParams&, const SpatialParams&) = default;
};

// Row-major 3x3 rotation Rz * Ry * Rx for angles in degrees.
std::array<double, 9> rotation_matrix(const std::array<double, 3>& euler_deg);

// Per-voxel displacement in voxels, one x-fastest array per component.
struct DisplacementField {
    Dims3 dims{};
    std::vector<float> dx;
    std::vector<float> dy;
    std::vector<float> dz;

    static DisplacementField zero(Dims3 dims);
};

// Standard-normal noise per component (from the stream's payload lane),
// smoothed by the separable Gaussian of `sigma`, scaled by `alpha`.
// alpha == 0 yields an all-zero field without reading the stream.
DisplacementField make_displacement_field(Dims3 dims, double sigma, double alpha,
                                          const Substream& stream,
                                          const simd::Kernels& k = simd::active_kernels());

// Inclusive integer bounds of the voxels a warp may read.
struct Cuboid {
    Dims3 lo{};
    Dims3 hi{};
    bool empty = true;

    Dims3 extent() const noexcept {
        return empty ? Dims3{0, 0, 0} : Dims3{hi.x - lo.x + 1, hi.y - lo.y + 1, hi.z - lo.z + 1};
    }
    friend bool operator==(const Cuboid&, const Cuboid&) = default;
};

struct WarpGrid {
    Dims3 dims{};        // crop dims
    Dims3 input_dims{};  // grid the coordinates refer to
    std::vector<float> x;
    std::vector<float> y;
    std::vector<float> z;
    Cuboid cuboid;

    Coordinate at(std::size_t i) const noexcept { return Coordinate{x[i], y[i], z[i]}; }
};

// Source coordinate of output voxel g:
//   crop_center + scale * R * (g - lattice_center) + field(g)
// with lattice_center = (dims - 1) / 2. The cuboid is floor(min) - 1 ..
// ceil(max) + 1 per axis, clipped to the input grid.
WarpGrid build_warp_grid(const SpatialParams& params, const DisplacementField& field,
                         Dims3 input_dims);

// Cuboid from the stored coordinates of `grid`.
Cuboid bounding_cuboid(const WarpGrid& grid);

// Trilinear resampling through the grid, padding 0. Only voxels inside the
// cuboid are read; the result equals per-voxel trilinear_sample on the
// full volume bit for bit.
Volume warp_image(const Volume& v, const WarpGrid& grid,
                  const simd::Kernels& k = simd::active_kernels());

// Nearest-neighbour counterpart, padding class 0.
LabelMap warp_label(const LabelMap& l, const WarpGrid& grid);

// Crop placement with identity rotation, scale and deformation. Per axis
// the crop offset is uniform over the placements that keep the crop inside
// the volume; when the crop is larger than the volume it is centred
// (offset -floor((w - n) / 2)). Always consumes three draws.
SpatialParams random_crop_params(Dims3 input_dims, Dims3 crop_dims, Substream& stream);

}  // namespace dst

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

#include <cstdint>
#include <span>
#include <vector>

#include "dst/simd/kernels.hpp"
#include "dst/volume.hpp"

namespace dst {

// Truncation radius for a Gaussian of standard deviation `sigma` voxels.
int gaussian_radius(double sigma);

// Sampled Gaussian over [-radius, radius], normalized to sum 1.
std::vector<double> gaussian_weights(double sigma);

// Per-position tap table for one axis of length `length`. Positions whose
// support leaves the grid drop the outside taps and renormalize the rest.
class AxisKernel {
public:
    AxisKernel(double sigma, int length);

    simd::AxisTaps taps() const noexcept;
    int radius() const noexcept { return radius_; }
    int length() const noexcept { return length_; }

private:
    int radius_;
    int length_;
    int stride_;
    int interior_begin_ = 0;
    int interior_end_ = 0;
    std::vector<float> weights_;
    std::vector<std::int32_t> first_;
    std::vector<std::int32_t> count_;
};

// Three-pass separable smoothing (x, then y, then z) of an x-fastest
// buffer. No clamping. Throws InvalidParameter for sigma <= 0.
std::vector<float> smooth_separable(std::span<const float> in, Dims3 dims, double sigma,
                                    const simd::Kernels& k = simd::active_kernels());

}  // namespace dst

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

#include "dst/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dst/errors.hpp"

namespace dst {

int gaussian_radius(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw InvalidParameter("gaussian sigma must be positive and finite, got " + std::to_string(sigma));
    return static_cast<int>(std::ceil(3.0 * sigma));
}

std::vector<double> gaussian_weights(double sigma) {
    const int r = gaussian_radius(sigma);
    std::vector<double> w(static_cast<std::size_t>(2 * r + 1));
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) {
        const double v = std::exp(-static_cast<double>(k) * k / (2.0 * sigma * sigma));
        w[static_cast<std::size_t>(k + r)] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

AxisKernel::AxisKernel(double sigma, int length)
    : radius_(gaussian_radius(sigma)), length_(length), stride_(2 * radius_ + 1) {
    if (length < 1) throw InvalidParameter("axis length must be at least 1");
    const std::vector<double> base = gaussian_weights(sigma);
    weights_.assign(static_cast<std::size_t>(length) * stride_, 0.0f);
    first_.resize(static_cast<std::size_t>(length));
    count_.resize(static_cast<std::size_t>(length));

    interior_begin_ = radius_;
    interior_end_ = length - radius_;
    if (interior_end_ < interior_begin_) interior_begin_ = interior_end_ = 0;

    for (int p = 0; p < length; ++p) {
        const int lo = std::max(-radius_, -p);
        const int hi = std::min(radius_, length - 1 - p);
        first_[static_cast<std::size_t>(p)] = lo;
        count_[static_cast<std::size_t>(p)] = hi - lo + 1;
        float* row = weights_.data() + static_cast<std::size_t>(p) * stride_;
        const bool interior = p >= interior_begin_ && p < interior_end_;
        double sum = 1.0;
        if (!interior) {
            sum = 0.0;
            for (int k = lo; k <= hi; ++k) sum += base[static_cast<std::size_t>(k + radius_)];
        }
        for (int k = lo; k <= hi; ++k)
            row[k - lo] = static_cast<float>(base[static_cast<std::size_t>(k + radius_)] / sum);
    }
}

simd::AxisTaps AxisKernel::taps() const noexcept {
    return simd::AxisTaps{weights_.data(), first_.data(), count_.data(), stride_,
                          length_,         radius_,       interior_begin_, interior_end_};
}

std::vector<float> smooth_separable(std::span<const float> in, Dims3 dims, double sigma,
                                    const simd::Kernels& k) {
    if (in.size() != dims.voxels()) throw InvalidInput("buffer size does not match dims");
    std::vector<float> a(in.begin(), in.end());
    std::vector<float> b(a.size());
    for (int axis = 0; axis < 3; ++axis) {
        const AxisKernel kernel(sigma, dims[axis]);
        const simd::AxisTaps taps = kernel.taps();
        k.convolve_axis(a.data(), b.data(), dims, axis, taps);
        a.swap(b);
    }
    return a;
}

}  // namespace dst

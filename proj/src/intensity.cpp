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

#include "dst/intensity.hpp"

#include <cmath>
#include <string>

#include "dst/errors.hpp"
#include "dst/gaussian.hpp"

namespace dst {
namespace {

void require_normalized(const Volume& v, const char* op) {
    if (!v.normalized())
        throw ContractViolation(std::string(op) + " requires a volume normalized to [0,1]");
}

Volume same_geometry(const Volume& v, std::vector<float> data) {
    return Volume(v.dims(), v.spacing(), std::move(data), true);
}

}  // namespace

Volume gaussian_blur(const Volume& v, double sigma, const simd::Kernels& k) {
    require_normalized(v, "gaussian_blur");
    if (!(sigma > 0.0)) throw InvalidParameter("blur sigma must be positive");
    std::vector<float> out = smooth_separable(v.data(), v.dims(), sigma, k);
    k.clamp_unit(out.data(), out.data(), out.size());
    return same_geometry(v, std::move(out));
}

Volume unsharp_sharpen(const Volume& v, double strength, double base_sigma, const simd::Kernels& k) {
    require_normalized(v, "unsharp_sharpen");
    if (!(strength >= 0.0)) throw InvalidParameter("sharpening strength must be non-negative");
    const Volume blurred = gaussian_blur(v, base_sigma, k);
    std::vector<float> out(v.data().size());
    k.unsharp_clamp(v.data().data(), blurred.data().data(), out.data(), out.size(),
                    static_cast<float>(strength));
    return same_geometry(v, std::move(out));
}

std::vector<float> gaussian_noise_field(Dims3 dims, double stddev, const Substream& stream) {
    if (!(stddev >= 0.0)) throw InvalidParameter("noise std must be non-negative");
    std::vector<float> noise(dims.voxels());
    stream.lane(Lane::payload).fill_normal(noise, stddev);
    return noise;
}

Volume add_gaussian_noise(const Volume& v, double stddev, const Substream& stream,
                          const simd::Kernels& k) {
    require_normalized(v, "add_gaussian_noise");
    const std::vector<float> noise = gaussian_noise_field(v.dims(), stddev, stream);
    std::vector<float> out(v.data().size());
    k.add_clamp(v.data().data(), noise.data(), out.data(), out.size());
    return same_geometry(v, std::move(out));
}

Volume shift_brightness(const Volume& v, double delta, const simd::Kernels& k) {
    require_normalized(v, "shift_brightness");
    std::vector<float> out(v.data().size());
    k.affine_clamp(v.data().data(), out.data(), out.size(), 1.0f, static_cast<float>(delta));
    return same_geometry(v, std::move(out));
}

Volume gamma_contrast(const Volume& v, double gamma) {
    require_normalized(v, "gamma_contrast");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidParameter("gamma must be positive");
    std::vector<float> out(v.data().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<float>(std::pow(static_cast<double>(v.data()[i]), gamma));
    return same_geometry(v, std::move(out));
}

Volume linear_perturb(const Volume& v, double scale, double shift, const simd::Kernels& k) {
    require_normalized(v, "linear_perturb");
    std::vector<float> out(v.data().size());
    k.affine_clamp(v.data().data(), out.data(), out.size(), static_cast<float>(1.0 + scale),
                   static_cast<float>(shift));
    return same_geometry(v, std::move(out));
}

Volume apply_intensity(const Volume& v, const IntensityMagnitude& m, const Substream& stream,
                       const simd::Kernels& k) {
    switch (m.kind) {
        case IntensityKind::sharpen: return unsharp_sharpen(v, m.value, m.aux, k);
        case IntensityKind::blur: return gaussian_blur(v, m.value, k);
        case IntensityKind::noise: return add_gaussian_noise(v, m.value, stream, k);
        case IntensityKind::brightness: return shift_brightness(v, m.value, k);
        case IntensityKind::contrast: return gamma_contrast(v, m.value);
        case IntensityKind::perturb: return linear_perturb(v, m.value, m.aux, k);
    }
    throw InvalidParameter("unknown intensity transform");
}

}  // namespace dst

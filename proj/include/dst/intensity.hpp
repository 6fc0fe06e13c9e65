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

// Intensity-space transforms. Each takes a normalized volume and returns a
// normalized volume with the same dims and spacing; labels never pass
// through here.

#include <vector>

#include "dst/random.hpp"
#include "dst/simd/kernels.hpp"
#include "dst/volume.hpp"

namespace dst {

enum class IntensityKind { sharpen, blur, noise, brightness, contrast, perturb };

// A sampled intensity magnitude. `aux` is the sharpening base sigma or the
// perturbation shift; unused otherwise.
struct IntensityMagnitude {
    IntensityKind kind;
    double value = 0.0;
    double aux = 0.0;
};

// Separable Gaussian, radius ceil(3 sigma), renormalized at borders,
// clamped to [0,1].
Volume gaussian_blur(const Volume& v, double sigma, const simd::Kernels& k = simd::active_kernels());

// clamp(v + strength * (v - blur(v, base_sigma)), 0, 1)
Volume unsharp_sharpen(const Volume& v, double strength, double base_sigma,
                       const simd::Kernels& k = simd::active_kernels());

// Zero-mean normal noise of the given std, one value per voxel in voxel
// order, before any clamping.
std::vector<float> gaussian_noise_field(Dims3 dims, double stddev, const Substream& stream);

// clamp(v + noise, 0, 1), noise from gaussian_noise_field.
Volume add_gaussian_noise(const Volume& v, double stddev, const Substream& stream,
                          const simd::Kernels& k = simd::active_kernels());

// clamp(v + delta, 0, 1)
Volume shift_brightness(const Volume& v, double delta, const simd::Kernels& k = simd::active_kernels());

// v^gamma. Requires a normalized input.
Volume gamma_contrast(const Volume& v, double gamma);

// clamp((1 + scale) * v + shift, 0, 1)
Volume linear_perturb(const Volume& v, double scale, double shift,
                      const simd::Kernels& k = simd::active_kernels());

// Dispatches on m.kind. `stream` is only read by the noise transform.
Volume apply_intensity(const Volume& v, const IntensityMagnitude& m, const Substream& stream,
                       const simd::Kernels& k = simd::active_kernels());

}  // namespace dst

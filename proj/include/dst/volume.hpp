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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dst {

// Voxel counts along x, y, z.
struct Dims3 {
    int x = 0;
    int y = 0;
    int z = 0;

    std::size_t voxels() const noexcept {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(y) *
               static_cast<std::size_t>(z);
    }
    int operator[](int axis) const noexcept { return axis == 0 ? x : axis == 1 ? y : z; }
    friend bool operator==(const Dims3&, const Dims3&) = default;
};

// Millimetres per voxel along x, y, z.
struct Spacing3 {
    double x = 1.0;
    double y = 1.0;
    double z = 1.0;

    double operator[](int axis) const noexcept { return axis == 0 ? x : axis == 1 ? y : z; }
    friend bool operator==(const Spacing3&, const Spacing3&) = default;
};

// Continuous voxel-space position. Voxel centres sit on integers; the grid
// spans [0, n-1] per axis. Single precision matches the warp grid storage,
// so point sampling and the batched warp share one arithmetic path.
struct Coordinate {
    float x = 0.0f;
    float y = 0.0f;
    float z = 0.0f;
};

std::string to_string(const Dims3& dims);

inline std::size_t linear_index(const Dims3& dims, int x, int y, int z) noexcept {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims.x) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.y) * z);
}

bool values_in_unit_range(std::span<const float> values) noexcept;

// Real-valued scalar volume, x-fastest. Immutable after construction.
class Volume {
public:
    Volume() = default;

    // Throws InvalidInput on empty dims, size mismatch, bad spacing or
    // non-finite data. With `normalized` set, also throws ContractViolation
    // unless every value lies in [0,1].
    Volume(Dims3 dims, Spacing3 spacing, std::vector<float> data, bool normalized = false);

    static Volume filled(Dims3 dims, Spacing3 spacing, float value);

    // Sets the normalized flag iff every value lies in [0,1].
    static Volume with_detected_range(Dims3 dims, Spacing3 spacing, std::vector<float> data);

    const Dims3& dims() const noexcept { return dims_; }
    const Spacing3& spacing() const noexcept { return spacing_; }
    std::span<const float> data() const noexcept { return data_; }
    bool normalized() const noexcept { return normalized_; }
    bool empty() const noexcept { return data_.empty(); }

    float at(int x, int y, int z) const noexcept { return data_[linear_index(dims_, x, y, z)]; }

    std::vector<float> release() && { return std::move(data_); }

private:
    Dims3 dims_{};
    Spacing3 spacing_{};
    std::vector<float> data_;
    bool normalized_ = false;
};

using label_t = std::uint16_t;

// Integer class map aligned with a Volume. Class 0 is background.
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(Dims3 dims, Spacing3 spacing, std::vector<label_t> data);

    const Dims3& dims() const noexcept { return dims_; }
    const Spacing3& spacing() const noexcept { return spacing_; }
    std::span<const label_t> data() const noexcept { return data_; }

    // Sorted distinct classes present in the map.
    const std::vector<label_t>& classes() const noexcept { return classes_; }

    label_t at(int x, int y, int z) const noexcept { return data_[linear_index(dims_, x, y, z)]; }

private:
    Dims3 dims_{};
    Spacing3 spacing_{};
    std::vector<label_t> data_;
    std::vector<label_t> classes_;
};

// Throws InvalidInput unless dims and spacing match.
void check_aligned(const Volume& image, const LabelMap& label);

// Resamples to isotropic spacing `target_spacing_mm`. Output dims are
// round(n * s / t), at least 1. Voxel centres keep their physical position,
// (i + 0.5) * spacing, and positions past the last centre clamp to the edge.
Volume resample_isotropic(const Volume& v, double target_spacing_mm);

// Nearest-neighbour counterpart used for label maps on the same grid.
LabelMap resample_isotropic(const LabelMap& l, double target_spacing_mm);

struct NormalizeResult {
    Volume volume;
    bool constant_input = false;  // warning: max == min, output is all zeros
};

// Min-max normalization to [0,1] over the whole volume.
NormalizeResult normalize_intensity(const Volume& v);

// Trilinear blend of the 8 neighbours of `c`; neighbours outside the grid
// contribute `pad_value`.
float trilinear_sample(const Volume& v, Coordinate c, float pad_value);

// Class of the nearest voxel (round half away from zero); `pad_class`
// outside the grid.
label_t nearest_sample(const LabelMap& l, Coordinate c, label_t pad_class);

}  // namespace dst

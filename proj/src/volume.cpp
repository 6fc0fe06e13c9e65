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

#include "dst/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dst/errors.hpp"
#include "dst/simd/trilinear.hpp"

namespace dst {
namespace {

void check_geometry(const Dims3& dims, const Spacing3& spacing, std::size_t size) {
    if (dims.x < 1 || dims.y < 1 || dims.z < 1)
        throw InvalidInput("volume dims must be at least 1 per axis, got " + to_string(dims));
    if (size != dims.voxels())
        throw InvalidInput("data length " + std::to_string(size) + " does not match dims " +
                           to_string(dims));
    for (int a = 0; a < 3; ++a)
        if (!std::isfinite(spacing[a]) || !(spacing[a] > 0.0))
            throw InvalidInput("spacing must be finite and positive");
}

int resampled_extent(int n, double spacing, double target) {
    const double exact = static_cast<double>(n) * spacing / target;
    return std::max(1, static_cast<int>(std::round(exact)));
}

// Source coordinate of output voxel i along one axis, keeping physical
// voxel centres aligned and clamping to the first/last source centre.
double source_position(int i, double target, double spacing, int n_in) {
    const double c = (static_cast<double>(i) + 0.5) * target / spacing - 0.5;
    return std::clamp(c, 0.0, static_cast<double>(n_in - 1));
}

double precise_trilinear(const Volume& v, double cx, double cy, double cz) {
    const Dims3& d = v.dims();
    const int x0 = std::min(static_cast<int>(std::floor(cx)), d.x - 1);
    const int y0 = std::min(static_cast<int>(std::floor(cy)), d.y - 1);
    const int z0 = std::min(static_cast<int>(std::floor(cz)), d.z - 1);
    const int x1 = std::min(x0 + 1, d.x - 1);
    const int y1 = std::min(y0 + 1, d.y - 1);
    const int z1 = std::min(z0 + 1, d.z - 1);
    const double tx = cx - x0;
    const double ty = cy - y0;
    const double tz = cz - z0;
    auto at = [&](int x, int y, int z) { return static_cast<double>(v.at(x, y, z)); };
    auto lerp = [](double a, double b, double t) { return a + t * (b - a); };
    const double c00 = lerp(at(x0, y0, z0), at(x1, y0, z0), tx);
    const double c10 = lerp(at(x0, y1, z0), at(x1, y1, z0), tx);
    const double c01 = lerp(at(x0, y0, z1), at(x1, y0, z1), tx);
    const double c11 = lerp(at(x0, y1, z1), at(x1, y1, z1), tx);
    return lerp(lerp(c00, c10, ty), lerp(c01, c11, ty), tz);
}

void check_target(double target) {
    if (!std::isfinite(target) || !(target > 0.0))
        throw InvalidParameter("target spacing must be finite and positive");
}

}  // namespace

std::string to_string(const Dims3& dims) {
    return std::to_string(dims.x) + "x" + std::to_string(dims.y) + "x" + std::to_string(dims.z);
}

bool values_in_unit_range(std::span<const float> values) noexcept {
    return std::all_of(values.begin(), values.end(), [](float v) { return v >= 0.0f && v <= 1.0f; });
}

Volume::Volume(Dims3 dims, Spacing3 spacing, std::vector<float> data, bool normalized)
    : dims_(dims), spacing_(spacing), data_(std::move(data)), normalized_(normalized) {
    check_geometry(dims_, spacing_, data_.size());
    if (!std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); }))
        throw InvalidInput("volume contains non-finite values");
    if (normalized_ && !values_in_unit_range(data_))
        throw ContractViolation("volume flagged normalized has values outside [0,1]");
}

Volume Volume::filled(Dims3 dims, Spacing3 spacing, float value) {
    std::vector<float> data(dims.voxels(), value);
    const bool unit = value >= 0.0f && value <= 1.0f;
    return Volume(dims, spacing, std::move(data), unit);
}

Volume Volume::with_detected_range(Dims3 dims, Spacing3 spacing, std::vector<float> data) {
    const bool unit = values_in_unit_range(data);
    return Volume(dims, spacing, std::move(data), unit);
}

LabelMap::LabelMap(Dims3 dims, Spacing3 spacing, std::vector<label_t> data)
    : dims_(dims), spacing_(spacing), data_(std::move(data)) {
    check_geometry(dims_, spacing_, data_.size());
    std::vector<bool> seen(std::numeric_limits<label_t>::max() + 1u, false);
    for (label_t c : data_) seen[c] = true;
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (seen[c]) classes_.push_back(static_cast<label_t>(c));
}

void check_aligned(const Volume& image, const LabelMap& label) {
    if (image.dims() != label.dims())
        throw InvalidInput("label dims " + to_string(label.dims()) + " do not match image dims " +
                           to_string(image.dims()));
    if (image.spacing() != label.spacing())
        throw InvalidInput("label spacing does not match image spacing");
}

Volume resample_isotropic(const Volume& v, double target_spacing_mm) {
    check_target(target_spacing_mm);
    if (v.empty()) throw InvalidInput("cannot resample an empty volume");
    const Dims3& in = v.dims();
    const Spacing3& s = v.spacing();
    const Dims3 out{resampled_extent(in.x, s.x, target_spacing_mm),
                    resampled_extent(in.y, s.y, target_spacing_mm),
                    resampled_extent(in.z, s.z, target_spacing_mm)};

    std::vector<double> px(static_cast<std::size_t>(out.x));
    std::vector<double> py(static_cast<std::size_t>(out.y));
    std::vector<double> pz(static_cast<std::size_t>(out.z));
    for (int i = 0; i < out.x; ++i) px[i] = source_position(i, target_spacing_mm, s.x, in.x);
    for (int i = 0; i < out.y; ++i) py[i] = source_position(i, target_spacing_mm, s.y, in.y);
    for (int i = 0; i < out.z; ++i) pz[i] = source_position(i, target_spacing_mm, s.z, in.z);

    std::vector<float> data(out.voxels());
    std::size_t idx = 0;
    for (int z = 0; z < out.z; ++z)
        for (int y = 0; y < out.y; ++y)
            for (int x = 0; x < out.x; ++x)
                data[idx++] = static_cast<float>(precise_trilinear(v, px[x], py[y], pz[z]));

    const Spacing3 iso{target_spacing_mm, target_spacing_mm, target_spacing_mm};
    return Volume(out, iso, std::move(data), v.normalized());
}

LabelMap resample_isotropic(const LabelMap& l, double target_spacing_mm) {
    check_target(target_spacing_mm);
    const Dims3& in = l.dims();
    const Spacing3& s = l.spacing();
    const Dims3 out{resampled_extent(in.x, s.x, target_spacing_mm),
                    resampled_extent(in.y, s.y, target_spacing_mm),
                    resampled_extent(in.z, s.z, target_spacing_mm)};
    auto nearest = [&](int i, double spacing, int n) {
        return static_cast<int>(std::round(source_position(i, target_spacing_mm, spacing, n)));
    };
    std::vector<label_t> data(out.voxels());
    std::size_t idx = 0;
    for (int z = 0; z < out.z; ++z) {
        const int sz = nearest(z, s.z, in.z);
        for (int y = 0; y < out.y; ++y) {
            const int sy = nearest(y, s.y, in.y);
            for (int x = 0; x < out.x; ++x) data[idx++] = l.at(nearest(x, s.x, in.x), sy, sz);
        }
    }
    const Spacing3 iso{target_spacing_mm, target_spacing_mm, target_spacing_mm};
    return LabelMap(out, iso, std::move(data));
}

NormalizeResult normalize_intensity(const Volume& v) {
    if (v.empty()) throw InvalidInput("cannot normalize an empty volume");
    const auto [lo_it, hi_it] = std::minmax_element(v.data().begin(), v.data().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<float> data(v.data().size(), 0.0f);
    if (hi == lo) return {Volume(v.dims(), v.spacing(), std::move(data), true), true};
    const double range = hi - lo;
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<float>((static_cast<double>(v.data()[i]) - lo) / range);
    return {Volume(v.dims(), v.spacing(), std::move(data), true), false};
}

float trilinear_sample(const Volume& v, Coordinate c, float pad_value) {
    const simd::CuboidView whole{v.data().data(), v.dims(), Dims3{0, 0, 0}, v.dims()};
    return simd::trilinear_at(whole, c.x, c.y, c.z, pad_value);
}

label_t nearest_sample(const LabelMap& l, Coordinate c, label_t pad_class) {
    const float rx = std::round(c.x);
    const float ry = std::round(c.y);
    const float rz = std::round(c.z);
    const Dims3& d = l.dims();
    if (!(rx >= 0.0f && rx < static_cast<float>(d.x) && ry >= 0.0f &&
          ry < static_cast<float>(d.y) && rz >= 0.0f && rz < static_cast<float>(d.z)))
        return pad_class;
    return l.at(static_cast<int>(rx), static_cast<int>(ry), static_cast<int>(rz));
}

}  // namespace dst

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

#include "dst/pipeline.hpp"

#include <cmath>
#include <string>

#include "dst/errors.hpp"
#include "dst/intensity.hpp"

namespace dst {
namespace {

struct KindInfo {
    TransformKind kind;
    std::string_view name;
    Range magnitude;
    std::optional<Range> aux;
};

// Default ranges; deform alpha has no reference value and uses the
// default amplitude envelope.
constexpr KindInfo kKinds[] = {
    {TransformKind::sharpen, "sharpen", {10.0, 30.0}, Range{0.25, 1.5}},
    {TransformKind::blur, "blur", {0.25, 1.5}, std::nullopt},
    {TransformKind::noise, "noise", {0.1, 1.0}, std::nullopt},
    {TransformKind::brightness, "brightness", {-0.1, 0.1}, std::nullopt},
    {TransformKind::contrast, "contrast", {0.5, 4.5}, std::nullopt},
    {TransformKind::perturb, "perturb", {-0.1, 0.1}, Range{-0.1, 0.1}},
    {TransformKind::rotate, "rotate", {-20.0, 20.0}, std::nullopt},
    {TransformKind::scale, "scale", {0.4, 1.6}, std::nullopt},
    {TransformKind::deform, "deform", {10.0, 13.0}, Range{0.0, 900.0}},
};

const KindInfo& info(TransformKind kind) {
    for (const KindInfo& k : kKinds)
        if (k.kind == kind) return k;
    throw InvalidParameter("unknown transform kind");
}

bool finite(const Range& r) { return std::isfinite(r.lo) && std::isfinite(r.hi); }

// Hard limits that hold even with --allow-extended.
void check_physical(const TransformSpec& s, const std::string& where) {
    const Range& m = s.magnitude;
    auto fail = [&](const std::string& what) { throw InvalidParameter(where + ": " + what); };
    switch (s.kind) {
        case TransformKind::sharpen:
            if (m.lo < 0.0) fail("sharpen strength must be >= 0");
            if (s.aux->lo <= 0.0) fail("sharpen base sigma must be > 0");
            break;
        case TransformKind::blur:
            if (m.lo <= 0.0) fail("blur sigma must be > 0");
            break;
        case TransformKind::noise:
            if (m.lo < 0.0) fail("noise std must be >= 0");
            break;
        case TransformKind::contrast:
            if (m.lo <= 0.0) fail("gamma must be > 0");
            break;
        case TransformKind::scale:
            if (m.lo <= 0.0) fail("scale factor must be > 0");
            break;
        case TransformKind::deform:
            if (m.lo <= 0.0) fail("deformation sigma must be > 0");
            if (s.aux->lo < 0.0) fail("deformation alpha must be >= 0");
            break;
        case TransformKind::perturb:
            if (m.lo <= -1.0) fail("perturbation scale must be > -1");
            break;
        case TransformKind::brightness:
        case TransformKind::rotate:
            break;
    }
}

IntensityKind intensity_kind(TransformKind kind) {
    switch (kind) {
        case TransformKind::sharpen: return IntensityKind::sharpen;
        case TransformKind::blur: return IntensityKind::blur;
        case TransformKind::noise: return IntensityKind::noise;
        case TransformKind::brightness: return IntensityKind::brightness;
        case TransformKind::contrast: return IntensityKind::contrast;
        case TransformKind::perturb: return IntensityKind::perturb;
        default: throw InvalidParameter("not an intensity transform");
    }
}

void push_draw(Substream& s, const Range& r, std::vector<double>& out) {
    out.push_back(s.uniform(r.lo, r.hi));
}

}  // namespace

std::string_view kind_name(TransformKind kind) noexcept {
    for (const KindInfo& k : kKinds)
        if (k.kind == kind) return k.name;
    return "unknown";
}

TransformKind parse_kind(std::string_view name) {
    for (const KindInfo& k : kKinds)
        if (k.name == name) return k.kind;
    throw InvalidParameter("unknown transform kind '" + std::string(name) + "'");
}

bool is_spatial(TransformKind kind) noexcept {
    return kind == TransformKind::rotate || kind == TransformKind::scale ||
           kind == TransformKind::deform;
}

TransformSpec envelope_spec(TransformKind kind, double probability) {
    const KindInfo& k = info(kind);
    return TransformSpec{kind, probability, k.magnitude, k.aux};
}

std::vector<TransformSpec> default_stack(double probability) {
    std::vector<TransformSpec> out;
    for (TransformKind kind : kAllKinds) out.push_back(envelope_spec(kind, probability));
    return out;
}

std::vector<std::string> preset_names() {
    return {"mri_prostate", "mri_heart", "us_ventricle", "top4", "baseline"};
}

PipelineConfig default_dst_config(std::string_view preset) {
    PipelineConfig c;
    c.preset_name = std::string(preset);
    if (preset == "mri_prostate") {
        c.transforms = default_stack(0.5);
        c.crop_dims = {96, 96, 32};
    } else if (preset == "mri_heart" || preset == "us_ventricle") {
        c.transforms = default_stack(0.5);
        c.crop_dims = {96, 96, 96};
    } else if (preset == "top4") {
        c.transforms = default_stack(0.0);
        for (TransformSpec& s : c.transforms)
            if (s.kind == TransformKind::sharpen || s.kind == TransformKind::brightness ||
                s.kind == TransformKind::contrast || s.kind == TransformKind::scale)
                s.probability = 0.5;
        c.crop_dims = {96, 96, 32};
    } else if (preset == "baseline") {
        c.transforms = default_stack(0.0);
        c.crop_dims = {96, 96, 32};
    } else {
        throw InvalidParameter("unknown preset '" + std::string(preset) + "'");
    }
    return c;
}

void validate(const PipelineConfig& config, bool allow_extended) {
    if (config.crop_dims.x < 1 || config.crop_dims.y < 1 || config.crop_dims.z < 1)
        throw InvalidParameter("crop dims must be at least 1 per axis");
    bool seen_spatial[3] = {false, false, false};
    for (std::size_t i = 0; i < config.transforms.size(); ++i) {
        const TransformSpec& s = config.transforms[i];
        const std::string where = "transform " + std::to_string(i) + " (" + std::string(kind_name(s.kind)) + ")";
        const KindInfo& k = info(s.kind);
        if (!(s.probability >= 0.0 && s.probability <= 1.0))
            throw InvalidParameter(where + ": probability must lie in [0,1]");
        if (!finite(s.magnitude) || s.magnitude.lo > s.magnitude.hi)
            throw InvalidParameter(where + ": magnitude range must be finite with lo <= hi");
        if (k.aux.has_value() != s.aux.has_value())
            throw InvalidParameter(where + (k.aux ? ": aux range is required" : ": aux range is not allowed"));
        if (s.aux && (!finite(*s.aux) || s.aux->lo > s.aux->hi))
            throw InvalidParameter(where + ": aux range must be finite with lo <= hi");
        if (is_spatial(s.kind)) {
            const int slot = s.kind == TransformKind::rotate ? 0 : s.kind == TransformKind::scale ? 1 : 2;
            if (seen_spatial[slot]) throw InvalidParameter(where + ": spatial kinds may appear only once");
            seen_spatial[slot] = true;
        }
        check_physical(s, where);
        if (!allow_extended) {
            if (!k.magnitude.contains(s.magnitude))
                throw InvalidParameter(where + ": magnitude range outside the validated envelope [" +
                                       std::to_string(k.magnitude.lo) + ", " +
                                       std::to_string(k.magnitude.hi) + "]; pass --allow-extended");
            if (s.aux && !k.aux->contains(*s.aux))
                throw InvalidParameter(where + ": aux range outside the validated envelope; pass --allow-extended");
        }
    }
}

Substream derive_substream(std::uint64_t seed, std::uint64_t sample_index,
                           std::uint32_t transform_index) noexcept {
    return Substream(seed, sample_index, transform_index, Lane::params);
}

TransformDraw sample_params(const TransformSpec& spec, Substream& stream) {
    TransformDraw d;
    d.kind = spec.kind;
    d.activated = stream.uniform() < spec.probability;
    push_draw(stream, spec.magnitude, d.magnitudes);
    if (spec.kind == TransformKind::rotate) {
        push_draw(stream, spec.magnitude, d.magnitudes);
        push_draw(stream, spec.magnitude, d.magnitudes);
    }
    if (spec.aux) push_draw(stream, *spec.aux, d.magnitudes);
    return d;
}

SampleDraw draw_sample(const PipelineConfig& config, Dims3 input_dims, std::uint64_t sample_index) {
    SampleDraw draw;
    draw.seed = config.seed;
    draw.sample_index = sample_index;
    draw.input_dims = input_dims;

    Substream crop_stream = derive_substream(config.seed, sample_index, kCropSlot);
    draw.spatial = random_crop_params(input_dims, config.crop_dims, crop_stream);

    for (std::size_t i = 0; i < config.transforms.size(); ++i) {
        Substream s = derive_substream(config.seed, sample_index, static_cast<std::uint32_t>(i));
        TransformDraw t = sample_params(config.transforms[i], s);
        if (t.activated) {
            switch (t.kind) {
                case TransformKind::rotate:
                    draw.spatial.euler_deg = {t.magnitudes[0], t.magnitudes[1], t.magnitudes[2]};
                    break;
                case TransformKind::scale: draw.spatial.scale = t.magnitudes[0]; break;
                case TransformKind::deform:
                    draw.spatial.deform_sigma = t.magnitudes[0];
                    draw.spatial.deform_alpha = t.magnitudes[1];
                    break;
                default: break;
            }
        }
        draw.transforms.push_back(std::move(t));
    }
    return draw;
}

AugmentResult replay(const SampleDraw& draw, const Volume& image, const LabelMap* label) {
    if (!image.normalized())
        throw ContractViolation("augmentation input must be normalized to [0,1]; run normalize first");
    if (label) check_aligned(image, *label);
    if (image.dims() != draw.input_dims)
        throw InvalidInput("draw was made for input " + to_string(draw.input_dims) +
                           " but the image is " + to_string(image.dims()));

    const SpatialParams& sp = draw.spatial;
    DisplacementField field = DisplacementField::zero(sp.crop_dims);
    for (std::size_t i = 0; i < draw.transforms.size(); ++i) {
        const TransformDraw& t = draw.transforms[i];
        if (t.activated && t.kind == TransformKind::deform && sp.deform_alpha > 0.0)
            field = make_displacement_field(
                sp.crop_dims, sp.deform_sigma, sp.deform_alpha,
                derive_substream(draw.seed, draw.sample_index, static_cast<std::uint32_t>(i)));
    }
    const WarpGrid grid = build_warp_grid(sp, field, image.dims());
    if (grid.cuboid != draw.cuboid && draw.cuboid != Cuboid{})
        throw InvalidInput("recorded cuboid does not match the rebuilt warp grid");

    AugmentResult result{warp_image(image, grid), std::nullopt, draw};
    result.draw.cuboid = grid.cuboid;
    if (label) result.label = warp_label(*label, grid);

    for (std::size_t i = 0; i < draw.transforms.size(); ++i) {
        const TransformDraw& t = draw.transforms[i];
        if (!t.activated || is_spatial(t.kind)) continue;
        IntensityMagnitude m{intensity_kind(t.kind), t.magnitudes[0],
                             t.magnitudes.size() > 1 ? t.magnitudes[1] : 0.0};
        result.image = apply_intensity(
            result.image, m,
            derive_substream(draw.seed, draw.sample_index, static_cast<std::uint32_t>(i)));
    }
    return result;
}

AugmentResult apply(const PipelineConfig& config, const Volume& image, const LabelMap* label,
                    std::uint64_t sample_index) {
    if (!image.normalized())
        throw ContractViolation("augmentation input must be normalized to [0,1]; run normalize first");
    if (label) check_aligned(image, *label);
    validate(config, true);
    return replay(draw_sample(config, image.dims(), sample_index), image, label);
}

}  // namespace dst

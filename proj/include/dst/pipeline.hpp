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

// Stacked augmentation: an ordered list of probability/magnitude
// transforms applied per sample. Spatial members are fused into one warp
// grid together with the random crop; intensity members then run in stack
// order on the cropped image.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dst/random.hpp"
#include "dst/spatial.hpp"
#include "dst/volume.hpp"

namespace dst {

enum class TransformKind { sharpen, blur, noise, brightness, contrast, perturb, rotate, scale, deform };

inline constexpr TransformKind kAllKinds[] = {
    TransformKind::sharpen,  TransformKind::blur,   TransformKind::noise,
    TransformKind::brightness, TransformKind::contrast, TransformKind::perturb,
    TransformKind::rotate,   TransformKind::scale,  TransformKind::deform,
};

std::string_view kind_name(TransformKind kind) noexcept;

// Throws InvalidParameter on unknown names.
TransformKind parse_kind(std::string_view name);

bool is_spatial(TransformKind kind) noexcept;

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    double midpoint() const noexcept { return lo + (hi - lo) / 2.0; }
    bool contains(const Range& inner) const noexcept { return lo <= inner.lo && inner.hi <= hi; }
    friend bool operator==(const Range&, const Range&) = default;
};

// magnitude:
//   sharpen strength | blur sigma | noise std | brightness delta |
//   contrast gamma | perturb scale | rotate angle per axis (deg) |
//   scale factor | deform smoothing sigma
// aux (required for these three kinds, absent otherwise):
//   sharpen base blur sigma | perturb shift | deform alpha
struct TransformSpec {
    TransformKind kind = TransformKind::blur;
    double probability = 0.5;
    Range magnitude;
    std::optional<Range> aux;

    friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

struct PipelineConfig {
    std::vector<TransformSpec> transforms;
    Dims3 crop_dims{96, 96, 96};
    std::uint64_t seed = 0;
    std::string preset_name;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Validated envelope for a kind: the default ranges, plus the default
// deformation amplitude range for alpha.
TransformSpec envelope_spec(TransformKind kind, double probability = 0.5);

// The nine kinds in default stack order with default ranges.
std::vector<TransformSpec> default_stack(double probability = 0.5);

std::vector<std::string> preset_names();

// mri_prostate | mri_heart | us_ventricle | top4 | baseline.
// Throws InvalidParameter for unknown names.
PipelineConfig default_dst_config(std::string_view preset);

// Throws InvalidParameter describing the first offending spec. Without
// `allow_extended`, every range must sit inside its envelope.
void validate(const PipelineConfig& config, bool allow_extended = false);

// Slot used for the crop-placement stream; independent of stack length.
inline constexpr std::uint32_t kCropSlot = 0x7FFFFFFFu;

Substream derive_substream(std::uint64_t seed, std::uint64_t sample_index,
                           std::uint32_t transform_index) noexcept;

struct TransformDraw {
    TransformKind kind = TransformKind::blur;
    bool activated = false;
    std::vector<double> magnitudes;

    friend bool operator==(const TransformDraw&, const TransformDraw&) = default;
};

// Activation is uniform[0,1) < p, drawn first; magnitudes follow and are
// drawn whether or not the transform fires.
TransformDraw sample_params(const TransformSpec& spec, Substream& stream);

// Everything random about one sample. Replaying it reproduces the outputs.
struct SampleDraw {
    std::uint64_t seed = 0;
    std::uint64_t sample_index = 0;
    Dims3 input_dims{};
    std::vector<TransformDraw> transforms;
    SpatialParams spatial;  // the single grid shared by image and label
    Cuboid cuboid;

    friend bool operator==(const SampleDraw&, const SampleDraw&) = default;
};

SampleDraw draw_sample(const PipelineConfig& config, Dims3 input_dims, std::uint64_t sample_index);

struct AugmentResult {
    Volume image;
    std::optional<LabelMap> label;
    SampleDraw draw;
};

// Throws ContractViolation for an unnormalized image, InvalidInput when
// the label is not aligned with the image, and InvalidParameter when the
// config fails validate(config, true).
AugmentResult apply(const PipelineConfig& config, const Volume& image, const LabelMap* label,
                    std::uint64_t sample_index);

AugmentResult replay(const SampleDraw& draw, const Volume& image, const LabelMap* label);

}  // namespace dst

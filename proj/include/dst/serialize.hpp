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

// JSON documents for pipeline configs and sample draws.
//
// Config:
//   {
//     "preset": "mri_prostate",          // optional label
//     "seed": 0,
//     "crop": [96, 96, 32],
//     "transforms": [
//       {"kind": "sharpen", "probability": 0.5,
//        "magnitude": [10.0, 30.0], "aux": [0.25, 1.5]},
//       ...
//     ]
//   }
//
// Draw:
//   {
//     "seed": 42, "sample_index": 0, "input_dims": [128, 128, 128],
//     "transforms": [{"kind": "blur", "activated": true, "magnitudes": [0.7]}, ...],
//     "spatial": {"euler_deg": [..], "scale": 1.0, "deform_sigma": 0.0,
//                 "deform_alpha": 0.0, "crop_dims": [..], "crop_center": [..]},
//     "cuboid": {"lo": [..], "hi": [..], "empty": false}
//   }
//
// Doubles are written in shortest round-trip form, so parse(dump(x)) == x.

#include <filesystem>
#include <string>
#include <string_view>

#include "dst/pipeline.hpp"

namespace dst {

std::string config_to_json(const PipelineConfig& config);

// Throws ParseError naming the offending key.
PipelineConfig config_from_json(std::string_view text);

PipelineConfig load_config(const std::filesystem::path& path);

std::string draw_to_json(const SampleDraw& draw);
SampleDraw draw_from_json(std::string_view text);

}  // namespace dst

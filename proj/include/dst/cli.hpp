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

// Batch commands behind the dst-aug executable. Each returns the process
// exit status: 0 when every entry succeeded, 1 when any entry failed, 2 for
// invalid arguments or configuration.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dst/pipeline.hpp"

namespace dst::cli {

// `spec` is a config file path, or a preset name when no such file exists.
PipelineConfig resolve_config(const std::string& spec);

struct NormalizeOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    double target_spacing = 1.0;
    int threads = 1;
};

// Writes <out>/<id>_image.nii, <out>/<id>_label.nii (when labelled),
// <out>/manifest.jsonl and <out>/normalize_report.json.
int run_normalize(const NormalizeOptions& o, std::ostream& out, std::ostream& err);

struct AugmentOptions {
    std::filesystem::path manifest;
    std::string config;
    std::filesystem::path out_dir;
    int samples_per_image = 1;
    std::optional<std::uint64_t> seed;
    std::optional<Dims3> crop;
    bool allow_extended = false;
    int threads = 1;
};

// Sample k of entry e uses sample index e * samples_per_image + k and is
// written to <out>/<id>/s<k>_image.nii, s<k>_label.nii, s<k>_draw.json
// (k zero-padded to 4 digits), plus <out>/manifest.jsonl.
int run_augment(const AugmentOptions& o, std::ostream& out, std::ostream& err);

struct PreviewOptions {
    std::filesystem::path image;
    std::string config;
    std::filesystem::path out_dir;
    bool allow_extended = false;
};

// One mid-slice PGM per transform with probability > 0 at its range
// midpoint (preview_<i>_<kind>.pgm), plus preview_stacked.pgm from a full
// pipeline draw for sample 0.
int run_preview(const PreviewOptions& o, std::ostream& out, std::ostream& err);

struct BenchCliOptions {
    Dims3 crop{96, 96, 96};
    std::vector<int> input_sizes{128, 256, 512};
    int repetitions = 10;
    std::optional<std::filesystem::path> out_file;
};

int run_bench(const BenchCliOptions& o, std::ostream& out, std::ostream& err);

struct PresetsOptions {
    bool dump = false;
    std::optional<std::filesystem::path> out_dir;
};

// Without --dump: preset names, one per line. With --dump: a JSON object
// mapping each name to its config document; with an output directory, one
// <name>.json per preset, byte-identical to config_to_json.
int run_presets(const PresetsOptions& o, std::ostream& out, std::ostream& err);

// Parses "96,96,32".
Dims3 parse_dims_arg(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace dst::cli

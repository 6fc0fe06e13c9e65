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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dst/cli.hpp"
#include "dst/errors.hpp"
#include "dst/version.hpp"

int main(int argc, char** argv) {
    using namespace dst::cli;

    CLI::App app{"dst-aug: stacked 3D volume augmentation"};
    app.set_version_flag("--version", std::string(dst::kVersion));
    app.require_subcommand(1);

    NormalizeOptions norm;
    auto* normalize = app.add_subcommand("normalize", "Resample to isotropic spacing and min-max normalize");
    normalize->add_option("--manifest", norm.manifest, "Input manifest (JSON Lines)")->required();
    normalize->add_option("--out", norm.out_dir, "Output directory")->required();
    normalize->add_option("--target-spacing", norm.target_spacing, "Isotropic spacing in mm")->capture_default_str();
    normalize->add_option("--threads", norm.threads, "Worker threads")->capture_default_str();

    AugmentOptions aug;
    std::string aug_crop;
    std::uint64_t aug_seed = 0;
    auto* augment = app.add_subcommand("augment", "Write augmented samples for every manifest entry");
    augment->add_option("--manifest", aug.manifest, "Normalized manifest")->required();
    augment->add_option("--config", aug.config, "Config file or preset name")->required();
    augment->add_option("--out", aug.out_dir, "Output directory")->required();
    augment->add_option("--samples-per-image", aug.samples_per_image)->capture_default_str();
    auto* seed_opt = augment->add_option("--seed", aug_seed, "Overrides the config seed");
    augment->add_option("--crop", aug_crop, "Overrides the crop, e.g. 96,96,32");
    augment->add_flag("--allow-extended", aug.allow_extended, "Accept ranges outside the validated envelope");
    augment->add_option("--threads", aug.threads)->capture_default_str();

    PreviewOptions prev;
    auto* preview = app.add_subcommand("preview", "Mid-slice PGM previews per transform");
    preview->add_option("--image", prev.image, "Normalized image")->required();
    preview->add_option("--config", prev.config, "Config file or preset name")->required();
    preview->add_option("--out", prev.out_dir, "Output directory")->required();
    preview->add_flag("--allow-extended", prev.allow_extended);

    BenchCliOptions bench;
    std::string bench_crop = "96,96,96";
    std::string bench_sizes = "128,256,512";
    std::string bench_out;
    auto* benchmark = app.add_subcommand("bench", "Time the fused warp across input volume sizes");
    benchmark->add_option("--crop", bench_crop)->capture_default_str();
    benchmark->add_option("--input-sizes", bench_sizes, "Cube edge lengths")->capture_default_str();
    benchmark->add_option("--reps", bench.repetitions)->capture_default_str();
    benchmark->add_option("--out", bench_out, "Also write the report here");

    PresetsOptions pre;
    std::string pre_out;
    auto* presets = app.add_subcommand("presets", "List or dump the built-in presets");
    presets->add_flag("--dump", pre.dump, "Print preset config documents");
    presets->add_option("--out", pre_out, "With --dump, write <name>.json files here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*normalize) return run_normalize(norm, std::cout, std::cerr);
        if (*augment) {
            if (*seed_opt) aug.seed = aug_seed;
            if (!aug_crop.empty()) aug.crop = parse_dims_arg(aug_crop);
            return run_augment(aug, std::cout, std::cerr);
        }
        if (*preview) return run_preview(prev, std::cout, std::cerr);
        if (*benchmark) {
            bench.crop = parse_dims_arg(bench_crop);
            bench.input_sizes = parse_int_list(bench_sizes);
            if (!bench_out.empty()) bench.out_file = bench_out;
            return run_bench(bench, std::cout, std::cerr);
        }
        if (*presets) {
            if (!pre_out.empty()) pre.out_dir = pre_out;
            return run_presets(pre, std::cout, std::cerr);
        }
    } catch (const dst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

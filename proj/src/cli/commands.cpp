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

#include "dst/cli.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dst/bench.hpp"
#include "dst/errors.hpp"
#include "dst/intensity.hpp"
#include "dst/io.hpp"
#include "dst/serialize.hpp"

namespace dst::cli {
namespace fs = std::filesystem;

namespace {

// Runs fn(0..count-1) on up to `threads` workers. Each index is handled by
// exactly one worker; callers key their outputs by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

std::string sample_stem(int k) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%04d", k);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

struct EntryStatus {
    bool ok = true;
    std::string error;
    std::vector<std::string> warnings;
};

}  // namespace

Dims3 parse_dims_arg(const std::string& text) {
    const std::vector<int> v = parse_int_list(text);
    if (v.size() != 3) throw InvalidParameter("expected three comma-separated integers, got '" + text + "'");
    return Dims3{v[0], v[1], v[2]};
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw InvalidParameter("malformed integer '" + item + "'");
        }
        if (used != item.size()) throw InvalidParameter("malformed integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidParameter("expected a comma-separated integer list");
    return out;
}

PipelineConfig resolve_config(const std::string& spec) {
    if (fs::exists(spec)) return load_config(spec);
    for (const std::string& name : preset_names())
        if (name == spec) return default_dst_config(name);
    throw IoError("config '" + spec + "' is neither a readable file nor a preset name");
}

int run_normalize(const NormalizeOptions& o, std::ostream& out, std::ostream& err) {
    DatasetManifest manifest;
    try {
        manifest = read_manifest(o.manifest);
        if (!(o.target_spacing > 0.0)) throw InvalidParameter("--target-spacing must be positive");
        fs::create_directories(o.out_dir);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& w : manifest.warnings) err << "warning: " << w << "\n";

    const std::size_t n = manifest.entries.size();
    std::vector<EntryStatus> status(n);
    std::vector<ManifestEntry> written(n);
    parallel_for(n, o.threads, [&](std::size_t i) {
        const ManifestEntry& e = manifest.entries[i];
        try {
            const Volume image = read_volume(e.image);
            std::optional<LabelMap> label;
            if (e.label) {
                label = read_label(*e.label);
                check_aligned(image, *label);
            }
            NormalizeResult norm = normalize_intensity(resample_isotropic(image, o.target_spacing));
            if (norm.constant_input)
                status[i].warnings.push_back("constant image intensity; normalized to all zeros");
            ManifestEntry w{e.id, e.id + "_image.nii", std::nullopt, e.modality};
            write_nifti(norm.volume, o.out_dir / w.image);
            if (label) {
                w.label = e.id + "_label.nii";
                write_nifti(resample_isotropic(*label, o.target_spacing), o.out_dir / *w.label);
            }
            written[i] = std::move(w);
        } catch (const std::exception& ex) {
            status[i].ok = false;
            status[i].error = ex.what();
        }
    });

    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    std::vector<ManifestEntry> ok_entries;
    int failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::ordered_json r;
        r["id"] = manifest.entries[i].id;
        r["status"] = status[i].ok ? "ok" : "error";
        if (!status[i].ok) r["error"] = status[i].error;
        r["warnings"] = status[i].warnings;
        report.push_back(std::move(r));
        for (const std::string& w : status[i].warnings)
            err << "warning: " << manifest.entries[i].id << ": " << w << "\n";
        if (status[i].ok) {
            ok_entries.push_back(written[i]);
        } else {
            ++failures;
            err << "error: " << manifest.entries[i].id << ": " << status[i].error << "\n";
        }
    }
    try {
        write_manifest(ok_entries, o.out_dir / "manifest.jsonl");
        write_text(o.out_dir / "normalize_report.json", report.dump(2) + "\n");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    out << "normalized " << (n - static_cast<std::size_t>(failures)) << "/" << n << " entries\n";
    return failures == 0 ? 0 : 1;
}

int run_augment(const AugmentOptions& o, std::ostream& out, std::ostream& err) {
    DatasetManifest manifest;
    PipelineConfig config;
    try {
        if (o.samples_per_image < 1) throw InvalidParameter("--samples-per-image must be >= 1");
        manifest = read_manifest(o.manifest);
        config = resolve_config(o.config);
        if (o.seed) config.seed = *o.seed;
        if (o.crop) config.crop_dims = *o.crop;
        validate(config, o.allow_extended);
        fs::create_directories(o.out_dir);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& w : manifest.warnings) err << "warning: " << w << "\n";

    const std::size_t n = manifest.entries.size();
    const auto k_per = static_cast<std::size_t>(o.samples_per_image);
    std::vector<EntryStatus> status(n);
    parallel_for(n, o.threads, [&](std::size_t i) {
        const ManifestEntry& e = manifest.entries[i];
        try {
            const Volume image = read_volume(e.image);
            if (!image.normalized())
                throw ContractViolation("image " + e.image.string() +
                                        " is not normalized to [0,1]; run `dst-aug normalize` first");
            std::optional<LabelMap> label;
            if (e.label) label = read_label(*e.label);
            const fs::path dir = o.out_dir / e.id;
            fs::create_directories(dir);
            for (std::size_t k = 0; k < k_per; ++k) {
                const AugmentResult r = apply(config, image, label ? &*label : nullptr, i * k_per + k);
                const std::string stem = sample_stem(static_cast<int>(k));
                write_nifti(r.image, dir / (stem + "_image.nii"));
                if (r.label) write_nifti(*r.label, dir / (stem + "_label.nii"));
                write_text(dir / (stem + "_draw.json"), draw_to_json(r.draw));
            }
        } catch (const std::exception& ex) {
            status[i].ok = false;
            status[i].error = ex.what();
        }
    });

    std::vector<ManifestEntry> outputs;
    int failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const ManifestEntry& e = manifest.entries[i];
        if (!status[i].ok) {
            ++failures;
            err << "error: " << e.id << ": " << status[i].error << "\n";
            continue;
        }
        for (std::size_t k = 0; k < k_per; ++k) {
            const std::string stem = sample_stem(static_cast<int>(k));
            ManifestEntry w{e.id + "_" + stem, fs::path(e.id) / (stem + "_image.nii"), std::nullopt, e.modality};
            if (e.label) w.label = fs::path(e.id) / (stem + "_label.nii");
            outputs.push_back(std::move(w));
        }
    }
    try {
        write_manifest(outputs, o.out_dir / "manifest.jsonl");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    out << "augmented " << (n - static_cast<std::size_t>(failures)) << "/" << n << " entries, "
        << outputs.size() << " samples\n";
    return failures == 0 ? 0 : 1;
}

int run_preview(const PreviewOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const PipelineConfig config = resolve_config(o.config);
        validate(config, o.allow_extended);
        const Volume image = read_volume(o.image);
        if (!image.normalized())
            throw ContractViolation("image " + o.image.string() + " is not normalized to [0,1]; run `dst-aug normalize` first");
        fs::create_directories(o.out_dir);

        const Dims3 d = image.dims();
        int files = 0;
        for (std::size_t i = 0; i < config.transforms.size(); ++i) {
            const TransformSpec& s = config.transforms[i];
            if (!(s.probability > 0.0)) continue;
            const Substream stream = derive_substream(config.seed, 0, static_cast<std::uint32_t>(i));
            const double mid = s.magnitude.midpoint();
            const double aux = s.aux ? s.aux->midpoint() : 0.0;
            Volume result;
            if (is_spatial(s.kind)) {
                SpatialParams p;
                p.crop_dims = d;
                p.crop_center = {(d.x - 1) / 2.0, (d.y - 1) / 2.0, (d.z - 1) / 2.0};
                DisplacementField field = DisplacementField::zero(d);
                if (s.kind == TransformKind::rotate) p.euler_deg = {mid, mid, mid};
                if (s.kind == TransformKind::scale) p.scale = mid;
                if (s.kind == TransformKind::deform) field = make_displacement_field(d, mid, aux, stream);
                result = warp_image(image, build_warp_grid(p, field, d));
            } else {
                IntensityKind kind = IntensityKind::blur;
                switch (s.kind) {
                    case TransformKind::sharpen: kind = IntensityKind::sharpen; break;
                    case TransformKind::blur: kind = IntensityKind::blur; break;
                    case TransformKind::noise: kind = IntensityKind::noise; break;
                    case TransformKind::brightness: kind = IntensityKind::brightness; break;
                    case TransformKind::contrast: kind = IntensityKind::contrast; break;
                    default: kind = IntensityKind::perturb; break;
                }
                result = apply_intensity(image, IntensityMagnitude{kind, mid, aux}, stream);
            }
            const std::string name = "preview_" + std::to_string(i) + "_" + std::string(kind_name(s.kind)) + ".pgm";
            export_slice(result, 2, result.dims().z / 2, o.out_dir / name);
            ++files;
        }
        const AugmentResult stacked = apply(config, image, nullptr, 0);
        export_slice(stacked.image, 2, stacked.image.dims().z / 2, o.out_dir / "preview_stacked.pgm");
        ++files;
        out << "wrote " << files << " previews\n";
        return 0;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_bench(const BenchCliOptions& o, std::ostream& out, std::ostream& err) {
    BenchOptions b;
    b.crop_dims = o.crop;
    b.input_sizes = o.input_sizes;
    b.repetitions = o.repetitions;
    BenchReport report;
    try {
        report = dst::run_bench(b);
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    const std::string text = bench_to_json(report);
    out << text;
    if (o.out_file) {
        try {
            write_text(*o.out_file, text);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}

int run_presets(const PresetsOptions& o, std::ostream& out, std::ostream& err) {
    if (!o.dump) {
        for (const std::string& name : preset_names()) out << name << "\n";
        return 0;
    }
    nlohmann::ordered_json all;
    for (const std::string& name : preset_names()) {
        const std::string doc = config_to_json(default_dst_config(name));
        all[name] = nlohmann::ordered_json::parse(doc);
        if (o.out_dir) {
            try {
                fs::create_directories(*o.out_dir);
                write_text(*o.out_dir / (name + ".json"), doc);
            } catch (const std::exception& e) {
                err << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    out << all.dump(2) << "\n";
    return 0;
}

}  // namespace dst::cli

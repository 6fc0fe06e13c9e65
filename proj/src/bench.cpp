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

#include "dst/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <new>

#include <json.hpp>

#include "dst/errors.hpp"
#include "dst/random.hpp"
#include "dst/spatial.hpp"

namespace dst {
namespace {

double percentile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

Volume random_volume(Dims3 dims, std::uint64_t seed) {
    std::vector<float> data(dims.voxels());
    Substream s(seed, dims.x, 0, Lane::payload);
    for (float& v : data) v = static_cast<float>(s.next_u32() >> 8) * 0x1.0p-24f;
    return Volume(dims, Spacing3{}, std::move(data), true);
}

}  // namespace

BenchReport run_bench(const BenchOptions& o) {
    if (o.repetitions < 5) throw InvalidParameter("bench needs at least 5 repetitions");
    if (o.input_sizes.empty()) throw InvalidParameter("bench needs at least one input size");
    if (o.crop_dims.x < 1 || o.crop_dims.y < 1 || o.crop_dims.z < 1)
        throw InvalidParameter("crop dims must be at least 1");
    for (int n : o.input_sizes)
        if (n < 1) throw InvalidParameter("input sizes must be positive");

    // A moderate fixed transform whose cuboid fits inside the smallest
    // default input, so every size does the same interpolation work.
    SpatialParams params;
    params.euler_deg = {5.0, -5.0, 8.0};
    params.scale = 0.9;
    params.deform_sigma = 11.5;
    params.deform_alpha = 450.0;
    params.crop_dims = o.crop_dims;
    const DisplacementField field = make_displacement_field(
        o.crop_dims, params.deform_sigma, params.deform_alpha, Substream(o.seed, 0, 0));

    std::vector<Volume> volumes;
    try {
        for (int n : o.input_sizes) volumes.push_back(random_volume(Dims3{n, n, n}, o.seed));
    } catch (const std::bad_alloc&) {
        throw Error("insufficient memory for the requested bench input sizes");
    }

    BenchReport report;
    report.isa = std::string(simd::to_string(simd::active_isa()));
    std::vector<std::vector<double>> times(volumes.size());
    std::vector<std::uint64_t> bytes(volumes.size(), 0);
    auto run_once = [&](std::size_t i) {
        SpatialParams p = params;
        const double c = (volumes[i].dims().x - 1) / 2.0;
        p.crop_center = {c, c, c};
        const auto t0 = std::chrono::steady_clock::now();
        const WarpGrid grid = build_warp_grid(p, field, volumes[i].dims());
        const Volume warped = warp_image(volumes[i], grid);
        const auto t1 = std::chrono::steady_clock::now();
        bytes[i] = grid.cuboid.extent().voxels() * sizeof(float);
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };
    for (std::size_t i = 0; i < volumes.size(); ++i) run_once(i);  // warm-up
    for (int r = 0; r < o.repetitions; ++r)
        for (std::size_t i = 0; i < volumes.size(); ++i) times[i].push_back(run_once(i));

    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < volumes.size(); ++i) {
        BenchCase c;
        c.input_dims = volumes[i].dims();
        c.crop_dims = o.crop_dims;
        c.repetitions = o.repetitions;
        c.p50_ms = percentile(times[i], 0.5);
        c.p90_ms = percentile(times[i], 0.9);
        c.bytes_read_bound = bytes[i];
        lo = i == 0 ? c.p50_ms : std::min(lo, c.p50_ms);
        hi = i == 0 ? c.p50_ms : std::max(hi, c.p50_ms);
        report.cases.push_back(c);
    }
    report.p50_ratio = hi / lo;
    return report;
}

std::string bench_to_json(const BenchReport& r) {
    nlohmann::ordered_json doc;
    doc["isa"] = r.isa;
    doc["p50_ratio"] = r.p50_ratio;
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (const BenchCase& c : r.cases) {
        nlohmann::ordered_json e;
        e["input_dims"] = {c.input_dims.x, c.input_dims.y, c.input_dims.z};
        e["crop_dims"] = {c.crop_dims.x, c.crop_dims.y, c.crop_dims.z};
        e["repetitions"] = c.repetitions;
        e["p50_ms"] = c.p50_ms;
        e["p90_ms"] = c.p90_ms;
        e["bytes_read_bound"] = c.bytes_read_bound;
        cases.push_back(std::move(e));
    }
    doc["cases"] = std::move(cases);
    return doc.dump(2) + "\n";
}

BenchReport bench_from_json(const std::string& text) {
    try {
        const nlohmann::json doc = nlohmann::json::parse(text);
        BenchReport r;
        r.isa = doc.at("isa").get<std::string>();
        r.p50_ratio = doc.at("p50_ratio").get<double>();
        for (const auto& e : doc.at("cases")) {
            BenchCase c;
            const auto in = e.at("input_dims").get<std::vector<int>>();
            const auto cr = e.at("crop_dims").get<std::vector<int>>();
            if (in.size() != 3 || cr.size() != 3) throw ParseError("cases", "dims must have 3 entries");
            c.input_dims = {in[0], in[1], in[2]};
            c.crop_dims = {cr[0], cr[1], cr[2]};
            c.repetitions = e.at("repetitions").get<int>();
            c.p50_ms = e.at("p50_ms").get<double>();
            c.p90_ms = e.at("p90_ms").get<double>();
            c.bytes_read_bound = e.at("bytes_read_bound").get<std::uint64_t>();
            r.cases.push_back(c);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("bench report", e.what());
    }
}

}  // namespace dst

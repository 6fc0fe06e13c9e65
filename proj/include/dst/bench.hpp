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

#include <cstdint>
#include <string>
#include <vector>

#include "dst/volume.hpp"

namespace dst {

struct BenchCase {
    Dims3 input_dims{};
    Dims3 crop_dims{};
    int repetitions = 0;
    double p50_ms = 0.0;
    double p90_ms = 0.0;
    std::uint64_t bytes_read_bound = 0;  // cuboid voxels * sizeof(float)
};

struct BenchReport {
    std::string isa;
    std::vector<BenchCase> cases;
    double p50_ratio = 0.0;  // max p50 / min p50 across cases
};

struct BenchOptions {
    Dims3 crop_dims{96, 96, 96};
    std::vector<int> input_sizes{128, 256, 512};  // cube edge lengths
    int repetitions = 10;
    std::uint64_t seed = 0;
};

// Times grid construction plus warp_image for each input size with one
// fixed transform, crop centred in the volume. Volume synthesis and the
// displacement field are prepared outside the timed region. Repetitions
// are interleaved across sizes. Throws InvalidParameter for fewer than 5
// repetitions and Error when the volumes cannot be allocated.
BenchReport run_bench(const BenchOptions& options);

// {"isa": ..., "p50_ratio": ..., "cases": [{"input_dims": [..], "crop_dims": [..],
//   "repetitions": n, "p50_ms": .., "p90_ms": .., "bytes_read_bound": ..}, ...]}
std::string bench_to_json(const BenchReport& report);
BenchReport bench_from_json(const std::string& text);

}  // namespace dst

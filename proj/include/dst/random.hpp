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

#include <array>
#include <cstdint>
#include <span>

namespace dst {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Which independent sequence of a transform's substream to read.
// Parameter draws and bulk payload draws (noise voxels, displacement
// fields) never share counters.
enum class Lane : std::uint32_t { params = 0, payload = 1 };

// Deterministic stream addressed by (seed, sample_index, slot, lane). Every
// value is a pure function of that address and its position in the stream,
// so draws never depend on what other streams consumed.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t sample_index, std::uint32_t slot,
              Lane lane = Lane::params) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t sample_index() const noexcept { return sample_; }
    std::uint32_t slot() const noexcept { return slot_; }

    // Same address, other lane, position reset to 0.
    Substream lane(Lane lane) const noexcept { return Substream(seed_, sample_, slot_, lane); }

    std::uint32_t next_u32() noexcept;

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

    // Uniform double in [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi) noexcept;

    // Uniform integer in [0, n); n must be >= 1.
    std::uint64_t below(std::uint64_t n) noexcept;

    // Standard normals: value i comes from block i / 2 by Box-Muller, so a
    // fill can be split across threads without changing any value.
    void fill_normal(std::span<float> out, double stddev) const noexcept;

private:
    PhiloxCounter block(std::uint32_t index) const noexcept;

    std::uint64_t seed_;
    std::uint64_t sample_;
    std::uint32_t slot_;
    std::uint32_t lane_;
    std::uint32_t next_block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
};

}  // namespace dst

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

#include "dst/random.hpp"

#include <cmath>
#include <numbers>

namespace dst {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
    return static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

Substream::Substream(std::uint64_t seed, std::uint64_t sample_index, std::uint32_t slot,
                     Lane lane) noexcept
    : seed_(seed), sample_(sample_index), slot_(slot), lane_(static_cast<std::uint32_t>(lane)) {}

PhiloxCounter Substream::block(std::uint32_t index) const noexcept {
    // Counter words: block index, sample index (two words), slot with the
    // lane in the top bit. Key: the 64-bit seed.
    const PhiloxCounter ctr{index, static_cast<std::uint32_t>(sample_),
                            static_cast<std::uint32_t>(sample_ >> 32),
                            (slot_ & 0x7FFFFFFFu) | (lane_ << 31)};
    const PhiloxKey key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    return philox4x32_10(ctr, key);
}

std::uint32_t Substream::next_u32() noexcept {
    if (used_ == 4) {
        buffer_ = block(next_block_++);
        used_ = 0;
    }
    return buffer_[static_cast<std::size_t>(used_++)];
}

double Substream::uniform() noexcept {
    const std::uint32_t hi = next_u32();
    const std::uint32_t lo = next_u32();
    return to_unit(hi, lo);
}

double Substream::uniform(double lo, double hi) noexcept {
    const double u = uniform();
    if (lo == hi) return lo;
    return lo + u * (hi - lo);
}

std::uint64_t Substream::below(std::uint64_t n) noexcept {
    const double u = uniform();
    const auto v = static_cast<std::uint64_t>(u * static_cast<double>(n));
    return v < n ? v : n - 1;
}

void Substream::fill_normal(std::span<float> out, double stddev) const noexcept {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < out.size(); i += 2) {
        const PhiloxCounter r = block(static_cast<std::uint32_t>(i / 2));
        // 1 - u keeps the log argument in (0, 1].
        const double u1 = 1.0 - to_unit(r[0], r[1]);
        const double u2 = to_unit(r[2], r[3]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        out[i] = static_cast<float>(stddev * radius * std::cos(kTwoPi * u2));
        if (i + 1 < out.size()) out[i + 1] = static_cast<float>(stddev * radius * std::sin(kTwoPi * u2));
    }
}

}  // namespace dst

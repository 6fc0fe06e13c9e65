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

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "dst/random.hpp"

using namespace dst;

TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("substreams are pure functions of their address") {
    Substream a(9, 4, 2), b(9, 4, 2);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());

    auto first = [](Substream s) {
        std::vector<std::uint32_t> v;
        for (int i = 0; i < 16; ++i) v.push_back(s.next_u32());
        return v;
    };
    const std::set<std::vector<std::uint32_t>> distinct = {
        first(Substream(9, 4, 2)),  first(Substream(9, 4, 3)), first(Substream(9, 5, 2)),
        first(Substream(10, 4, 2)), first(Substream(9, 4, 2, Lane::payload)),
        first(Substream(9, 4ull << 32, 2))};
    CHECK(distinct.size() == 6);
}

TEST_CASE("uniform draws stay in range") {
    Substream s(1, 2, 3);
    for (int i = 0; i < 10000; ++i) {
        const double u = s.uniform();
        CHECK((u >= 0.0 && u < 1.0));
        const double r = s.uniform(-0.1, 0.1);
        CHECK((r >= -0.1 && r <= 0.1));
        CHECK(s.below(7) < 7u);
    }
    CHECK(s.uniform(0.25, 0.25) == 0.25);
    CHECK(s.below(1) == 0u);
}

TEST_CASE("below is roughly uniform") {
    Substream s(5, 0, 0);
    std::vector<int> hist(5, 0);
    for (int i = 0; i < 50000; ++i) ++hist[s.below(5)];
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("normal fill is deterministic and split-invariant") {
    const Substream s(3, 1, 4, Lane::payload);
    std::vector<float> a(1001), b(1001), c(500);
    s.fill_normal(a, 1.0);
    s.fill_normal(b, 1.0);
    s.fill_normal(c, 1.0);
    CHECK(a == b);
    CHECK(std::equal(c.begin(), c.end(), a.begin()));
    std::vector<float> scaled(1001);
    s.fill_normal(scaled, 0.5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(scaled[i] == doctest::Approx(a[i] * 0.5f).epsilon(1e-6));

    std::vector<float> big(200000);
    Substream(8, 0, 0).fill_normal(big, 1.0);
    double sum = 0.0, sq = 0.0;
    for (float x : big) {
        CHECK(std::isfinite(x));
        sum += x, sq += static_cast<double>(x) * x;
    }
    const double mean = sum / big.size();
    CHECK(std::abs(mean) < 3.0 / std::sqrt(200000.0) * 1.5);
    CHECK(sq / big.size() == doctest::Approx(1.0).epsilon(0.02));
}

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
#include <random>

#include "dst/errors.hpp"
#include "dst/volume.hpp"
#include "oracles.hpp"

using namespace dst;

TEST_CASE("volume construction validates geometry and range") {
    CHECK_THROWS_AS(Volume(Dims3{0, 1, 1}, {}, {}), InvalidInput);
    CHECK_THROWS_AS(Volume(Dims3{2, 1, 1}, {}, {0.0f}), InvalidInput);
    CHECK_THROWS_AS(Volume(Dims3{1, 1, 1}, Spacing3{0.0, 1.0, 1.0}, {0.0f}), InvalidInput);
    CHECK_THROWS_AS(Volume(Dims3{1, 1, 1}, {}, {NAN}), InvalidInput);
    CHECK_THROWS_AS(Volume(Dims3{1, 1, 1}, {}, {1.5f}, true), ContractViolation);
    CHECK(Volume::with_detected_range(Dims3{1, 1, 1}, {}, {0.5f}).normalized());
    CHECK_FALSE(Volume::with_detected_range(Dims3{1, 1, 1}, {}, {2.0f}).normalized());
}

TEST_CASE("label map reports sorted classes") {
    const LabelMap l(Dims3{4, 1, 1}, {}, {3, 0, 3, 1});
    CHECK(l.classes() == std::vector<label_t>{0, 1, 3});
}

TEST_CASE("resample of a constant volume stays constant") {
    const Volume v = Volume::filled(Dims3{5, 7, 3}, Spacing3{1.7, 0.6, 2.5}, 0.7f);
    const Volume r = resample_isotropic(v, 1.0);
    CHECK(r.dims() == Dims3{9, 4, 8});
    CHECK(r.spacing() == Spacing3{1.0, 1.0, 1.0});
    for (float x : r.data()) CHECK(x == 0.7f);
}

TEST_CASE("resample dims follow the spacing ratio") {
    const Volume r = resample_isotropic(Volume::filled(Dims3{4, 4, 4}, Spacing3{2, 2, 2}, 0.0f), 1.0);
    CHECK(r.dims() == Dims3{8, 8, 8});
    CHECK(resample_isotropic(Volume::filled(Dims3{1, 1, 1}, Spacing3{0.1, 0.1, 0.1}, 0.0f), 1.0).dims() ==
          Dims3{1, 1, 1});
    CHECK_THROWS_AS(resample_isotropic(Volume::filled(Dims3{1, 1, 1}, {}, 0.0f), 0.0), InvalidParameter);
}

TEST_CASE("resample matches a direct trilinear oracle") {
    const Dims3 d{16, 16, 16};
    const Spacing3 s{1.5, 1.0, 1.0};
    const Volume v = oracle::random_volume(d, 11, s);
    const Volume r = resample_isotropic(v, 1.0);
    REQUIRE(r.dims() == Dims3{24, 16, 16});

    auto pos = [](int i, double sp, int n) {
        double p = (i + 0.5) / sp - 0.5;  // physical centre (i+0.5)*1mm back to source index
        return std::min(std::max(p, 0.0), n - 1.0);
    };
    double worst = 0.0;
    for (int z = 0; z < r.dims().z; ++z)
        for (int y = 0; y < r.dims().y; ++y)
            for (int x = 0; x < r.dims().x; ++x) {
                const double p[3] = {pos(x, s.x, d.x), pos(y, s.y, d.y), pos(z, s.z, d.z)};
                // Weighted sum over the 8 corners.
                double acc = 0.0;
                for (int c = 0; c < 8; ++c) {
                    double w = 1.0;
                    int idx[3];
                    for (int a = 0; a < 3; ++a) {
                        const int lo = static_cast<int>(std::floor(p[a]));
                        const double t = p[a] - lo;
                        const int hi = (c >> a) & 1;
                        idx[a] = std::min(lo + hi, d[a] - 1);
                        w *= hi ? t : 1.0 - t;
                    }
                    acc += w * v.at(idx[0], idx[1], idx[2]);
                }
                worst = std::max(worst, std::abs(acc - r.at(x, y, z)));
            }
    CHECK(worst <= 1e-6);
}

TEST_CASE("label resample picks the nearest source voxel") {
    const LabelMap l(Dims3{2, 1, 1}, Spacing3{2, 1, 1}, {4, 9});
    const LabelMap r = resample_isotropic(l, 1.0);
    REQUIRE(r.dims() == Dims3{4, 1, 1});
    CHECK(std::vector<label_t>(r.data().begin(), r.data().end()) == std::vector<label_t>{4, 4, 9, 9});
}

TEST_CASE("normalize maps min and max to 0 and 1") {
    const NormalizeResult r = normalize_intensity(Volume(Dims3{3, 1, 1}, {}, {2, 4, 6}));
    CHECK_FALSE(r.constant_input);
    CHECK(r.volume.normalized());
    CHECK(r.volume.at(0, 0, 0) == 0.0f);
    CHECK(r.volume.at(1, 0, 0) == 0.5f);
    CHECK(r.volume.at(2, 0, 0) == 1.0f);
}

TEST_CASE("normalize of a constant volume yields zeros with a warning") {
    const NormalizeResult r = normalize_intensity(Volume::filled(Dims3{2, 2, 2}, {}, 3.0f));
    CHECK(r.constant_input);
    CHECK(r.volume.normalized());
    for (float x : r.volume.data()) CHECK(x == 0.0f);
}

TEST_CASE("normalize leaves a [0,1] volume spanning 0 and 1 unchanged") {
    std::vector<float> data = oracle::random_unit(64, 3);
    data[5] = 0.0f;
    data[17] = 1.0f;
    const Volume v(Dims3{4, 4, 4}, {}, data, true);
    const NormalizeResult r = normalize_intensity(v);
    CHECK(std::equal(r.volume.data().begin(), r.volume.data().end(), data.begin()));
}

TEST_CASE("trilinear sample examples") {
    const Volume v = oracle::random_volume(Dims3{4, 5, 3}, 5);
    CHECK(trilinear_sample(v, Coordinate{2, 3, 1}, 0.0f) == v.at(2, 3, 1));

    std::vector<float> data(8, 0.0f);
    data[1] = 1.0f;  // (1,0,0)
    const Volume two(Dims3{2, 2, 2}, {}, data, true);
    CHECK(trilinear_sample(two, Coordinate{0.5f, 0, 0}, 0.0f) == 0.5f);
    CHECK(trilinear_sample(v, Coordinate{-10, 40, 2}, 0.0f) == 0.0f);
    CHECK(trilinear_sample(v, Coordinate{-1e30f, 1e30f, NAN}, 0.0f) == 0.0f);
}

TEST_CASE("trilinear sample agrees with the oracle everywhere") {
    const Volume v = oracle::random_volume(Dims3{6, 5, 4}, 8);
    std::mt19937 rng(1);
    std::uniform_real_distribution<float> u(-3.0f, 8.0f);
    for (int i = 0; i < 2000; ++i) {
        const float x = u(rng), y = u(rng), z = u(rng);
        CHECK(trilinear_sample(v, Coordinate{x, y, z}, 0.25f) == oracle::trilinear(v, x, y, z, 0.25f));
    }
}

TEST_CASE("nearest sample examples") {
    std::vector<label_t> data(4 * 4 * 4);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<label_t>(i);
    const LabelMap l(Dims3{4, 4, 4}, {}, data);
    CHECK(nearest_sample(l, Coordinate{1.4f, 2.0f, 0.0f}, 0) == l.at(1, 2, 0));
    CHECK(nearest_sample(l, Coordinate{-5, 0, 0}, 0) == 0);
    CHECK(nearest_sample(l, Coordinate{3.4f, 0, 0}, 7) == l.at(3, 0, 0));
    CHECK(nearest_sample(l, Coordinate{3.5f, 0, 0}, 7) == 7);
}

TEST_CASE("nearest sample agrees with exhaustive distance search") {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> cls(0, 5);
    std::vector<label_t> data(8 * 8 * 8);
    for (auto& c : data) c = static_cast<label_t>(cls(rng));
    const Dims3 d{8, 8, 8};
    const LabelMap l(d, {}, data);
    std::uniform_real_distribution<float> u(0.0f, 7.0f);
    for (int i = 0; i < 100; ++i) {
        const Coordinate c{u(rng), u(rng), u(rng)};
        double best = 1e9;
        label_t want = 0;
        for (int z = 0; z < 8; ++z)
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x) {
                    const double dist = std::hypot(c.x - x, c.y - y, c.z - z);
                    if (dist < best) best = dist, want = l.at(x, y, z);
                }
        CHECK(nearest_sample(l, c, 0) == want);
    }
}

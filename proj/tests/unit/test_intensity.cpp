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
#include "dst/gaussian.hpp"
#include "dst/intensity.hpp"
#include "oracles.hpp"

using namespace dst;

namespace {

double max_abs_diff(std::span<const float> a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Volume single(float x) { return Volume(Dims3{1, 1, 1}, {}, {x}, true); }

}  // namespace

TEST_CASE("gaussian radius and weights") {
    CHECK(gaussian_radius(1.0) == 3);
    CHECK(gaussian_radius(0.25) == 1);
    CHECK(gaussian_radius(1.5) == 5);
    CHECK_THROWS_AS(gaussian_radius(0.0), InvalidParameter);
    const std::vector<double> w = gaussian_weights(1.0);
    REQUIRE(w.size() == 7);
    double sum = 0.0;
    for (double x : w) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[3] > w[2]);
    CHECK(w[0] == w[6]);
}

TEST_CASE("blur of a constant stays constant") {
    const Volume v = Volume::filled(Dims3{7, 6, 5}, {}, 0.7f);
    const Volume b = gaussian_blur(v, 1.0);
    for (float x : b.data()) CHECK(x == doctest::Approx(0.7f).epsilon(1e-6));
    CHECK(b.dims() == v.dims());
    CHECK_THROWS_AS(gaussian_blur(v, 0.0), InvalidParameter);
    CHECK_THROWS_AS(gaussian_blur(v, -1.0), InvalidParameter);
}

TEST_CASE("blur of an impulse peaks at the dense kernel centre") {
    const Dims3 d{9, 9, 9};
    std::vector<float> data(d.voxels(), 0.0f);
    data[linear_index(d, 4, 4, 4)] = 1.0f;
    const Volume b = gaussian_blur(Volume(d, {}, data, true), 1.0);
    double sum = 0.0;
    for (int z = -3; z <= 3; ++z)
        for (int y = -3; y <= 3; ++y)
            for (int x = -3; x <= 3; ++x) sum += std::exp(-(x * x + y * y + z * z) / 2.0);
    CHECK(std::abs(b.at(4, 4, 4) - 1.0 / sum) <= 1e-6);
}

TEST_CASE("separable blur matches the dense 3D oracle") {
    const Dims3 d{12, 12, 12};
    for (double sigma : {0.25, 0.6, 1.0, 1.5, 2.3}) {
        CAPTURE(sigma);
        const Volume v = oracle::random_volume(d, 40);
        const std::vector<double> want = oracle::dense_blur(std::vector<float>(v.data().begin(), v.data().end()), d, sigma);
        CHECK(max_abs_diff(gaussian_blur(v, sigma).data(), want) <= 1e-5);
    }
}

TEST_CASE("blur handles axes shorter than the kernel") {
    const Dims3 d{3, 2, 12};
    const Volume v = oracle::random_volume(d, 41);
    const std::vector<double> want = oracle::dense_blur(std::vector<float>(v.data().begin(), v.data().end()), d, 1.5);
    CHECK(max_abs_diff(gaussian_blur(v, 1.5).data(), want) <= 1e-5);
}

TEST_CASE("blur stays within the input value hull") {
    const Volume v = oracle::random_volume(Dims3{10, 9, 8}, 42);
    const auto [lo, hi] = std::minmax_element(v.data().begin(), v.data().end());
    const Volume b = gaussian_blur(v, 1.2);
    for (float x : b.data()) {
        CHECK(x >= *lo - 1e-6f);
        CHECK(x <= *hi + 1e-6f);
    }
}

TEST_CASE("unsharp sharpening") {
    const Volume c = Volume::filled(Dims3{6, 6, 6}, {}, 0.3f);
    const Volume sharp = unsharp_sharpen(c, 25.0, 1.0);
    for (float x : sharp.data()) CHECK(x == doctest::Approx(0.3f).epsilon(1e-5));

    const Volume v = oracle::random_volume(Dims3{6, 5, 4}, 9);
    const Volume same = unsharp_sharpen(v, 0.0, 1.0);
    CHECK(std::equal(same.data().begin(), same.data().end(), v.data().begin()));
    CHECK_THROWS_AS(unsharp_sharpen(v, -1.0, 1.0), InvalidParameter);

    // Step edge along x: oracle composes the formula with the dense blur.
    const Dims3 d{12, 4, 4};
    std::vector<float> step(d.voxels());
    for (int z = 0; z < d.z; ++z)
        for (int y = 0; y < d.y; ++y)
            for (int x = 0; x < d.x; ++x) step[linear_index(d, x, y, z)] = x < 6 ? 0.2f : 0.8f;
    const std::vector<double> blurred = oracle::dense_blur(step, d, 1.0);
    std::vector<double> want(step.size());
    for (std::size_t i = 0; i < step.size(); ++i)
        want[i] = std::clamp(step[i] + 10.0 * (step[i] - blurred[i]), 0.0, 1.0);
    CHECK(max_abs_diff(unsharp_sharpen(Volume(d, {}, step, true), 10.0, 1.0).data(), want) <= 1e-5);
}

TEST_CASE("noise: zero std is identity, same stream is deterministic") {
    const Volume v = oracle::random_volume(Dims3{8, 8, 8}, 1);
    const Substream s(7, 3, 2);
    const Volume zero = add_gaussian_noise(v, 0.0, s);
    CHECK(std::equal(zero.data().begin(), zero.data().end(), v.data().begin()));
    const Volume a = add_gaussian_noise(v, 0.3, s);
    const Volume b = add_gaussian_noise(v, 0.3, s);
    CHECK(std::equal(a.data().begin(), a.data().end(), b.data().begin()));
    const Volume c = add_gaussian_noise(v, 0.3, Substream(7, 3, 3));
    CHECK_FALSE(std::equal(a.data().begin(), a.data().end(), c.data().begin()));
    for (float x : a.data()) CHECK((x >= 0.0f && x <= 1.0f));
    CHECK_THROWS_AS(add_gaussian_noise(v, -0.1, s), InvalidParameter);
}

TEST_CASE("noise mean before clamping is within three standard errors") {
    const Dims3 d{96, 96, 96};
    const std::vector<float> n = gaussian_noise_field(d, 0.1, Substream(42, 0, 2));
    double sum = 0.0, sq = 0.0;
    for (float x : n) sum += x, sq += static_cast<double>(x) * x;
    const double count = static_cast<double>(n.size());
    const double mean = sum / count;
    CHECK(std::abs(mean) <= 3.0 * 0.1 / std::sqrt(count));
    CHECK(std::sqrt(sq / count - mean * mean) == doctest::Approx(0.1).epsilon(0.01));

    // The clamped transform adds exactly this field at an interior level.
    const Volume half = Volume::filled(Dims3{8, 8, 8}, {}, 0.5f);
    const std::vector<float> small = gaussian_noise_field(half.dims(), 0.1, Substream(1, 1, 1));
    const Volume out = add_gaussian_noise(half, 0.1, Substream(1, 1, 1));
    for (std::size_t i = 0; i < small.size(); ++i)
        CHECK(out.data()[i] == std::clamp(0.5f + small[i], 0.0f, 1.0f));
}

TEST_CASE("brightness examples") {
    const Volume v = oracle::random_volume(Dims3{5, 5, 5}, 2);
    const Volume id = shift_brightness(v, 0.0);
    CHECK(std::equal(id.data().begin(), id.data().end(), v.data().begin()));
    CHECK(shift_brightness(single(0.95f), 0.1).at(0, 0, 0) == 1.0f);
    CHECK(shift_brightness(single(0.5f), -0.1).at(0, 0, 0) == doctest::Approx(0.4f).epsilon(1e-6));
    CHECK(shift_brightness(single(0.05f), -0.1).at(0, 0, 0) == 0.0f);
}

TEST_CASE("gamma contrast examples") {
    const Volume v = oracle::random_volume(Dims3{5, 5, 5}, 3);
    const Volume id = gamma_contrast(v, 1.0);
    CHECK(std::equal(id.data().begin(), id.data().end(), v.data().begin()));
    CHECK(gamma_contrast(single(0.25f), 0.5).at(0, 0, 0) == 0.5f);
    CHECK(gamma_contrast(single(0.5f), 2.0).at(0, 0, 0) == 0.25f);
    CHECK_THROWS_AS(gamma_contrast(Volume(Dims3{1, 1, 1}, {}, {2.0f}), 2.0), ContractViolation);

    // Monotone: sorted input order is preserved.
    const Volume g = gamma_contrast(v, 3.3);
    for (std::size_t i = 0; i < v.data().size(); ++i)
        for (std::size_t j = 0; j < v.data().size(); j += 7)
            if (v.data()[i] <= v.data()[j]) CHECK(g.data()[i] <= g.data()[j]);
}

TEST_CASE("linear perturbation examples") {
    const Volume v = oracle::random_volume(Dims3{5, 5, 5}, 4);
    const Volume id = linear_perturb(v, 0.0, 0.0);
    CHECK(std::equal(id.data().begin(), id.data().end(), v.data().begin()));
    CHECK(linear_perturb(single(0.5f), 0.1, -0.1).at(0, 0, 0) == doctest::Approx(0.45f).epsilon(1e-6));
    CHECK(linear_perturb(single(1.0f), 0.1, 0.05).at(0, 0, 0) == 1.0f);
}

TEST_CASE("intensity transforms require normalized input and keep geometry") {
    const Volume raw(Dims3{2, 2, 2}, Spacing3{1, 2, 3}, std::vector<float>(8, 5.0f));
    const Substream s(0, 0, 0);
    for (IntensityKind k : {IntensityKind::sharpen, IntensityKind::blur, IntensityKind::noise,
                            IntensityKind::brightness, IntensityKind::contrast, IntensityKind::perturb})
        CHECK_THROWS_AS(apply_intensity(raw, IntensityMagnitude{k, 1.0, 0.5}, s), ContractViolation);

    const Volume v = oracle::random_volume(Dims3{6, 5, 4}, 6, Spacing3{1, 2, 3});
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const IntensityMagnitude ms[] = {
            {IntensityKind::sharpen, 10 + 20 * u(rng), 0.25 + 1.25 * u(rng)},
            {IntensityKind::blur, 0.25 + 1.25 * u(rng), 0.0},
            {IntensityKind::noise, 0.1 + 0.9 * u(rng), 0.0},
            {IntensityKind::brightness, -0.1 + 0.2 * u(rng), 0.0},
            {IntensityKind::contrast, 0.5 + 4.0 * u(rng), 0.0},
            {IntensityKind::perturb, -0.1 + 0.2 * u(rng), -0.1 + 0.2 * u(rng)},
        };
        for (const auto& m : ms) {
            const Volume out = apply_intensity(v, m, Substream(trial, 0, 0));
            CHECK(out.dims() == v.dims());
            CHECK(out.spacing() == v.spacing());
            CHECK(out.normalized());
            CHECK(values_in_unit_range(out.data()));
        }
    }
}

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

#include <fstream>

#include "dst/errors.hpp"
#include "dst/io.hpp"
#include "oracles.hpp"

using namespace dst;

namespace {

const float kCube[8] = {0.0f, 0.125f, 0.25f, 0.375f, 0.5f, 0.625f, 0.75f, 1.0f};

}  // namespace

TEST_CASE("nifti writer matches the hand-built 2x2x2 golden bytes") {
    oracle::NiftiFixture want(false, 16, 32, 1.0f, 0.0f);
    for (float v : kCube) {
        const auto w = std::bit_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) want.b.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
    }
    const Volume v(Dims3{2, 2, 2}, Spacing3{1.5, 2.0, 0.5}, std::vector<float>(kCube, kCube + 8), true);
    CHECK(encode_nifti(v) == want.b);

    const auto dir = oracle::scratch_dir("nifti_golden");
    write_nifti(v, dir / "v.nii");
    CHECK(oracle::read_bytes(dir / "v.nii") == want.b);
}

TEST_CASE("nifti round trip is bit exact") {
    const Volume v = oracle::random_volume(Dims3{7, 5, 3}, 1, Spacing3{0.75, 1.25, 3.0});
    const NiftiVolume r = decode_nifti(encode_nifti(v));
    CHECK(r.volume.dims() == v.dims());
    CHECK(r.volume.spacing() == v.spacing());
    CHECK(r.volume.normalized());
    CHECK(std::equal(v.data().begin(), v.data().end(), r.volume.data().begin()));

    std::vector<float> wide = oracle::random_unit(105, 2);
    wide[3] = -1234.5f;
    wide[4] = 3.0e30f;
    const Volume raw(Dims3{7, 5, 3}, {}, wide);
    const auto dir = oracle::scratch_dir("nifti_rt");
    write_nifti(raw, dir / "raw.nii");
    const NiftiVolume back = read_nifti(dir / "raw.nii");
    CHECK_FALSE(back.volume.normalized());
    CHECK(std::equal(wide.begin(), wide.end(), back.volume.data().begin()));

    const LabelMap l(Dims3{2, 2, 2}, {}, {0, 1, 2, 3, 4, 5, 6, 65535});
    write_nifti(l, dir / "l.nii");
    const LabelMap lb = read_nifti_label(dir / "l.nii");
    CHECK(std::equal(l.data().begin(), l.data().end(), lb.data().begin()));
}

TEST_CASE("nifti i16 fixture applies slope and intercept") {
    oracle::NiftiFixture h(false, 4, 16, 2.0f, -1.0f);
    const std::int16_t raw[8] = {0, 1, 2, 3, -4, 100, -32768, 32767};
    for (std::int16_t r : raw) {
        h.b.push_back(static_cast<std::uint8_t>(static_cast<std::uint16_t>(r) & 0xFF));
        h.b.push_back(static_cast<std::uint8_t>(static_cast<std::uint16_t>(r) >> 8));
    }
    const NiftiVolume n = decode_nifti(h.b);
    CHECK(n.header.scalar_type == ScalarType::i16);
    CHECK(n.header.slope == 2.0);
    CHECK(n.header.intercept == -1.0);
    CHECK(n.volume.spacing() == Spacing3{1.5, 2.0, 0.5});
    for (int i = 0; i < 8; ++i) CHECK(n.volume.data()[static_cast<std::size_t>(i)] == 2.0f * raw[i] - 1.0f);
}

TEST_CASE("nifti big-endian fixtures decode like little-endian ones") {
    oracle::NiftiFixture be(true, 16, 32, 0.0f, 0.0f);
    for (float v : kCube) {
        const auto w = std::bit_cast<std::uint32_t>(v);
        for (int i = 3; i >= 0; --i) be.b.push_back(static_cast<std::uint8_t>(w >> (8 * i)));
    }
    const NiftiVolume n = decode_nifti(be.b);
    CHECK(n.volume.dims() == Dims3{2, 2, 2});
    CHECK(n.volume.spacing() == Spacing3{1.5, 2.0, 0.5});
    for (int i = 0; i < 8; ++i) CHECK(n.volume.data()[static_cast<std::size_t>(i)] == kCube[i]);

    oracle::NiftiFixture u8(true, 2, 8, 0.0f, 0.0f);
    for (int i = 0; i < 8; ++i) u8.b.push_back(static_cast<std::uint8_t>(i * 30));
    const NiftiVolume m = decode_nifti(u8.b);
    CHECK(m.header.scalar_type == ScalarType::u8);
    CHECK(m.volume.data()[7] == 210.0f);
}

TEST_CASE("nifti rejects malformed headers with the offending field") {
    auto field_of = [](const std::vector<std::uint8_t>& b) -> std::string {
        try {
            decode_nifti(b);
        } catch (const ParseError& e) {
            return e.field();
        }
        return "";
    };
    const Volume v(Dims3{2, 2, 2}, {}, std::vector<float>(kCube, kCube + 8), true);
    const std::vector<std::uint8_t> good = encode_nifti(v);

    std::vector<std::uint8_t> b = good;
    b[0] = 0x5d, b[1] = 0x01, b[2] = 0, b[3] = 0;  // 349 little-endian
    CHECK(field_of(b) == "sizeof_hdr");
    b[0] = 0, b[1] = 0, b[2] = 0x01, b[3] = 0x5d;  // 349 big-endian
    CHECK(field_of(b) == "sizeof_hdr");
    CHECK(field_of(std::vector<std::uint8_t>(good.begin(), good.begin() + 100)) == "sizeof_hdr");

    b = good;
    b[345] = 'i';
    CHECK(field_of(b) == "magic");

    b = good;
    b[70] = 64;  // float64
    CHECK(field_of(b) == "datatype");

    b = good;
    b[72] = 16;
    CHECK(field_of(b) == "bitpix");

    b = good;
    b.resize(b.size() - 3);
    CHECK(field_of(b) == "payload");

    b = good;
    b[40] = 4, b[48] = 5;  // dim[0] = 4, dim[4] = 5
    CHECK(field_of(b) == "dim[4]");

    CHECK_THROWS_AS(read_nifti("/nonexistent/x.nii"), IoError);
}

TEST_CASE("nifti writer refuses unwritable paths") {
    const Volume v(Dims3{1, 1, 1}, {}, {0.5f}, true);
    CHECK_THROWS_AS(write_nifti(v, "/nonexistent/dir/v.nii"), IoError);
}

TEST_CASE("native format round trip and header") {
    const Volume v = oracle::random_volume(Dims3{3, 4, 5}, 3, Spacing3{0.1, 1.0, 2.5});
    const std::vector<std::uint8_t> bytes = encode_native(v);
    const std::string header = "DSTVOL 1 dims=3,4,5 spacing=0.1,1,2.5 dtype=f32 endian=little\n";
    REQUIRE(bytes.size() == header.size() + 4 * 60);
    CHECK(std::string(bytes.begin(), bytes.begin() + static_cast<long>(header.size())) == header);
    const Volume back = decode_native(bytes);
    CHECK(back.dims() == v.dims());
    CHECK(back.spacing() == v.spacing());
    CHECK(std::equal(v.data().begin(), v.data().end(), back.data().begin()));

    const auto dir = oracle::scratch_dir("native");
    write_volume(v, dir / "v.dvol");
    const Volume f = read_volume(dir / "v.dvol");
    CHECK(std::equal(v.data().begin(), v.data().end(), f.data().begin()));
    CHECK_THROWS_AS(write_volume(v, dir / "v.raw"), IoError);
}

TEST_CASE("native format errors carry line and column") {
    CHECK_THROWS_AS(decode_native({}), ParseError);
    auto err = [](const std::string& text) -> ParseError {
        try {
            decode_native(std::vector<std::uint8_t>(text.begin(), text.end()));
        } catch (const ParseError& e) {
            return e;
        }
        return ParseError("none", "no error");
    };
    const ParseError bad_dims = err("DSTVOL 1 dims=3,x,5 spacing=1,1,1 dtype=f32 endian=little\n");
    CHECK(bad_dims.field() == "dims");
    CHECK(bad_dims.line() == 1);
    CHECK(bad_dims.column() > 10);
    CHECK(err("DSTVOX 1 dims=1,1,1 spacing=1,1,1 dtype=f32 endian=little\n").field() == "magic");
    CHECK(err("DSTVOL 1 dims=1,1,1 spacing=1,1,1 dtype=f64 endian=little\n").field() == "dtype");
    const ParseError short_payload = err("DSTVOL 1 dims=2,1,1 spacing=1,1,1 dtype=f32 endian=little\nabcd");
    CHECK(short_payload.field() == "payload");
    CHECK(err("DSTVOL 1 dims=1,1,1 spacing=1,1,1 dtype=f32 endian=little").field() == "header");
}

TEST_CASE("pgm slice export") {
    // 2x2 gradient on the z = 0 slice: columns follow x, rows follow y.
    const Volume g(Dims3{2, 2, 1}, {}, {0.0f, 0.25f, 0.5f, 1.0f}, true);
    const std::vector<std::uint8_t> want = {'P', '5', '\n', '2', ' ', '2', '\n', '2', '5', '5', '\n', 0, 64, 128, 255};
    CHECK(encode_slice_pgm(g, 2, 0) == want);

    const Volume half = Volume::filled(Dims3{3, 4, 5}, {}, 0.5f);
    const std::vector<std::uint8_t> p = encode_slice_pgm(half, 0, 1);
    const std::string head = "P5\n4 5\n255\n";
    REQUIRE(p.size() == head.size() + 20);
    for (std::size_t i = head.size(); i < p.size(); ++i) CHECK(p[i] == 128);
    CHECK_THROWS_AS(encode_slice_pgm(half, 2, 5), InvalidParameter);
    CHECK_THROWS_AS(encode_slice_pgm(half, 3, 0), InvalidParameter);

    // Rows follow the slowest remaining axis: for axis 1, rows are z.
    std::vector<float> ramp(12);
    for (int z = 0; z < 3; ++z)
        for (int x = 0; x < 2; ++x) ramp[linear_index(Dims3{2, 2, 3}, x, 1, z)] = z * 0.5f;
    const std::vector<std::uint8_t> s = encode_slice_pgm(Volume(Dims3{2, 2, 3}, {}, ramp, true), 1, 1);
    const std::string h2 = "P5\n2 3\n255\n";
    CHECK(std::vector<std::uint8_t>(s.begin() + static_cast<long>(h2.size()), s.end()) ==
          std::vector<std::uint8_t>{0, 0, 128, 128, 255, 255});
}

TEST_CASE("manifest parsing") {
    const auto dir = oracle::scratch_dir("manifest");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return dir / name;
    };
    const DatasetManifest m = read_manifest(write("ok.jsonl",
        "# cases\n"
        "{\"id\": \"a\", \"image\": \"img/a.nii\", \"label\": \"lbl/a.nii\", \"modality\": \"mri\"}\n"
        "\n"
        "{\"id\": \"b\", \"image\": \"/abs/b.nii\"}\n"
        "{\"id\": \"c\", \"image\": \"c.dvol\", \"modality\": \"us\"}\n"));
    REQUIRE(m.entries.size() == 3);
    CHECK(m.entries[0].id == "a");
    CHECK(m.entries[0].image == dir / "img/a.nii");
    CHECK(m.entries[0].label == dir / "lbl/a.nii");
    CHECK(m.entries[1].image == "/abs/b.nii");
    CHECK_FALSE(m.entries[1].label.has_value());
    CHECK(m.entries[2].modality == "us");
    CHECK(m.warnings.empty());

    try {
        read_manifest(write("dup.jsonl",
            "{\"id\": \"a\", \"image\": \"x.nii\"}\n{\"id\": \"b\"}\n{\"id\": \"a\", \"image\": \"y.nii\"}\nnot json\n"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("line 4") != std::string::npos);
    }

    const DatasetManifest empty = read_manifest(write("empty.jsonl", ""));
    CHECK(empty.entries.empty());
    CHECK(empty.warnings.size() == 1);

    write_manifest(m.entries, dir / "out.jsonl");
    const DatasetManifest again = read_manifest(dir / "out.jsonl");
    CHECK(again.entries == m.entries);
}

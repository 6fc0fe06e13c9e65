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

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dst/errors.hpp"
#include "dst/io.hpp"

namespace dst {
namespace {

constexpr std::size_t kHeaderSize = 348;
constexpr std::size_t kVoxOffset = 352;

constexpr std::size_t kOffDim = 40;
constexpr std::size_t kOffDatatype = 70;
constexpr std::size_t kOffBitpix = 72;
constexpr std::size_t kOffPixdim = 76;
constexpr std::size_t kOffVoxOffset = 108;
constexpr std::size_t kOffSclSlope = 112;
constexpr std::size_t kOffSclInter = 116;
constexpr std::size_t kOffXyztUnits = 123;
constexpr std::size_t kOffMagic = 344;

constexpr std::int16_t kDtU8 = 2;
constexpr std::int16_t kDtI16 = 4;
constexpr std::int16_t kDtF32 = 16;

class ByteReader {
public:
    ByteReader(const std::vector<std::uint8_t>& bytes, bool big_endian)
        : bytes_(bytes), big_(big_endian) {}

    std::uint32_t u32(std::size_t off) const {
        const std::uint8_t* p = bytes_.data() + off;
        return big_ ? (std::uint32_t{p[0]} << 24 | std::uint32_t{p[1]} << 16 | std::uint32_t{p[2]} << 8 | p[3])
                    : (std::uint32_t{p[3]} << 24 | std::uint32_t{p[2]} << 16 | std::uint32_t{p[1]} << 8 | p[0]);
    }
    std::uint16_t u16(std::size_t off) const {
        const std::uint8_t* p = bytes_.data() + off;
        return static_cast<std::uint16_t>(big_ ? (p[0] << 8 | p[1]) : (p[1] << 8 | p[0]));
    }
    std::int16_t i16(std::size_t off) const { return static_cast<std::int16_t>(u16(off)); }
    std::int32_t i32(std::size_t off) const { return static_cast<std::int32_t>(u32(off)); }
    float f32(std::size_t off) const { return std::bit_cast<float>(u32(off)); }

private:
    const std::vector<std::uint8_t>& bytes_;
    bool big_;
};

void put_u16(std::vector<std::uint8_t>& b, std::size_t off, std::uint16_t v) {
    b[off] = static_cast<std::uint8_t>(v);
    b[off + 1] = static_cast<std::uint8_t>(v >> 8);
}

void put_u32(std::vector<std::uint8_t>& b, std::size_t off, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b[off + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void put_i16(std::vector<std::uint8_t>& b, std::size_t off, std::int16_t v) {
    put_u16(b, off, static_cast<std::uint16_t>(v));
}

void put_f32(std::vector<std::uint8_t>& b, std::size_t off, float v) {
    put_u32(b, off, std::bit_cast<std::uint32_t>(v));
}

std::vector<std::uint8_t> encode(Dims3 dims, Spacing3 spacing, std::span<const float> values) {
    for (float v : values)
        if (!std::isfinite(v)) throw InvalidInput("cannot write non-finite voxel values to NIfTI");
    std::vector<std::uint8_t> b(kVoxOffset + 4 * values.size(), 0);
    put_u32(b, 0, static_cast<std::uint32_t>(kHeaderSize));
    put_i16(b, kOffDim + 0, 3);
    put_i16(b, kOffDim + 2, static_cast<std::int16_t>(dims.x));
    put_i16(b, kOffDim + 4, static_cast<std::int16_t>(dims.y));
    put_i16(b, kOffDim + 6, static_cast<std::int16_t>(dims.z));
    for (int i = 4; i <= 7; ++i) put_i16(b, kOffDim + 2 * i, 1);
    put_i16(b, kOffDatatype, kDtF32);
    put_i16(b, kOffBitpix, 32);
    put_f32(b, kOffPixdim + 0, 1.0f);
    put_f32(b, kOffPixdim + 4, static_cast<float>(spacing.x));
    put_f32(b, kOffPixdim + 8, static_cast<float>(spacing.y));
    put_f32(b, kOffPixdim + 12, static_cast<float>(spacing.z));
    put_f32(b, kOffVoxOffset, static_cast<float>(kVoxOffset));
    put_f32(b, kOffSclSlope, 1.0f);
    put_f32(b, kOffSclInter, 0.0f);
    b[kOffXyztUnits] = 2;  // millimetres
    std::memcpy(b.data() + kOffMagic, "n+1\0", 4);
    for (std::size_t i = 0; i < values.size(); ++i)
        put_f32(b, kVoxOffset + 4 * i, values[i]);
    return b;
}

void check_dims_fit(const Dims3& d) {
    if (d.x > 32767 || d.y > 32767 || d.z > 32767)
        throw InvalidInput("dims exceed the NIfTI-1 limit of 32767 per axis");
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void spill(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_nifti(const Volume& v) {
    check_dims_fit(v.dims());
    return encode(v.dims(), v.spacing(), v.data());
}

NiftiVolume decode_nifti(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kHeaderSize) throw ParseError("sizeof_hdr", "file shorter than the 348-byte header");
    bool big = false;
    if (ByteReader(bytes, false).i32(0) == 348) {
        big = false;
    } else if (ByteReader(bytes, true).i32(0) == 348) {
        big = true;
    } else {
        throw ParseError("sizeof_hdr", "expected 348 in either byte order");
    }
    const ByteReader r(bytes, big);
    if (std::memcmp(bytes.data() + kOffMagic, "n+1\0", 4) != 0)
        throw ParseError("magic", "expected single-file \"n+1\" magic");

    const int ndim = r.i16(kOffDim);
    if (ndim < 1 || ndim > 7) throw ParseError("dim[0]", "dimension count must be 1..7");
    int dim[8] = {0, 1, 1, 1, 1, 1, 1, 1};
    for (int i = 1; i <= ndim; ++i) {
        dim[i] = r.i16(kOffDim + 2 * i);
        if (dim[i] < 1) throw ParseError("dim[" + std::to_string(i) + "]", "must be >= 1");
    }
    for (int i = 4; i <= ndim; ++i)
        if (dim[i] != 1) throw ParseError("dim[" + std::to_string(i) + "]", "only 3-D volumes are supported");

    VolumeHeader h;
    h.dims = Dims3{dim[1], dim[2], dim[3]};
    const std::int16_t datatype = r.i16(kOffDatatype);
    const std::int16_t bitpix = r.i16(kOffBitpix);
    int bytes_per = 0;
    switch (datatype) {
        case kDtU8: h.scalar_type = ScalarType::u8; bytes_per = 1; break;
        case kDtI16: h.scalar_type = ScalarType::i16; bytes_per = 2; break;
        case kDtF32: h.scalar_type = ScalarType::f32; bytes_per = 4; break;
        default: throw ParseError("datatype", "unsupported datatype " + std::to_string(datatype));
    }
    if (bitpix != 8 * bytes_per)
        throw ParseError("bitpix", "bitpix " + std::to_string(bitpix) + " does not match datatype");

    double sp[3];
    for (int a = 0; a < 3; ++a) {
        const float s = a < ndim ? r.f32(kOffPixdim + 4 * (a + 1)) : 1.0f;
        if (!std::isfinite(s) || !(s > 0.0f))
            throw ParseError("pixdim[" + std::to_string(a + 1) + "]", "spacing must be finite and positive");
        sp[a] = s;
    }
    h.spacing = Spacing3{sp[0], sp[1], sp[2]};

    const float vox_offset = r.f32(kOffVoxOffset);
    if (!std::isfinite(vox_offset) || vox_offset < static_cast<float>(kHeaderSize))
        throw ParseError("vox_offset", "must be at least 348");
    const float slope = r.f32(kOffSclSlope);
    const float inter = r.f32(kOffSclInter);
    const bool scaled = std::isfinite(slope) && slope != 0.0f;
    if (scaled) {
        h.slope = slope;
        h.intercept = std::isfinite(inter) ? inter : 0.0;
    }

    const auto offset = static_cast<std::size_t>(vox_offset);
    const std::size_t n = h.dims.voxels();
    if (bytes.size() < offset || bytes.size() - offset < n * static_cast<std::size_t>(bytes_per))
        throw ParseError("payload", "truncated: expected " + std::to_string(n * bytes_per) + " bytes of voxel data");

    std::vector<float> data(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t off = offset + i * static_cast<std::size_t>(bytes_per);
        double raw = 0.0;
        switch (h.scalar_type) {
            case ScalarType::u8: raw = bytes[off]; break;
            case ScalarType::i16: raw = r.i16(off); break;
            case ScalarType::f32: raw = r.f32(off); break;
        }
        data[i] = static_cast<float>(scaled ? h.slope * raw + h.intercept : raw);
    }
    return NiftiVolume{Volume::with_detected_range(h.dims, h.spacing, std::move(data)), h};
}

NiftiVolume read_nifti(const std::filesystem::path& path) {
    try {
        return decode_nifti(slurp(path));
    } catch (const ParseError& e) {
        throw ParseError(e.field(), std::string(e.what()) + " in " + path.string());
    }
}

LabelMap read_nifti_label(const std::filesystem::path& path) {
    const NiftiVolume nv = read_nifti(path);
    const std::span<const float> values = nv.volume.data();
    std::vector<label_t> data(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const float v = values[i];
        if (v < 0.0f || v > 65535.0f || v != std::floor(v))
            throw InvalidInput("label file " + path.string() + " holds a non-class value");
        data[i] = static_cast<label_t>(v);
    }
    return LabelMap(nv.volume.dims(), nv.volume.spacing(), std::move(data));
}

void write_nifti(const Volume& v, const std::filesystem::path& path) { spill(encode_nifti(v), path); }

void write_nifti(const LabelMap& l, const std::filesystem::path& path) {
    check_dims_fit(l.dims());
    std::vector<float> values(l.data().begin(), l.data().end());
    spill(encode(l.dims(), l.spacing(), values), path);
}

}  // namespace dst

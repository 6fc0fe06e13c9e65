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
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "dst/errors.hpp"
#include "dst/io.hpp"

namespace dst {
namespace {

constexpr std::string_view kMagic = "DSTVOL";

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Splits "a,b,c" into three numbers; `column` is the 1-based column of the
// value text within the header line.
template <typename T>
void parse_triple(std::string_view text, const char* field, int column, T out[3]) {
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t end = i < 2 ? text.find(',', pos) : text.size();
        if (end == std::string_view::npos)
            throw ParseError(field, "expected three comma-separated values", 1, column + static_cast<int>(pos));
        const char* first = text.data() + pos;
        const char* last = text.data() + end;
        const auto res = std::from_chars(first, last, out[i]);
        if (res.ec != std::errc() || res.ptr != last)
            throw ParseError(field, "malformed number '" + std::string(first, last) + "'", 1,
                             column + static_cast<int>(pos));
        pos = end + 1;
    }
}

}  // namespace

std::vector<std::uint8_t> encode_native(const Volume& v) {
    const Dims3& d = v.dims();
    const Spacing3& s = v.spacing();
    const std::string header = std::string(kMagic) + " 1 dims=" + std::to_string(d.x) + "," +
                               std::to_string(d.y) + "," + std::to_string(d.z) +
                               " spacing=" + shortest(s.x) + "," + shortest(s.y) + "," + shortest(s.z) +
                               " dtype=f32 endian=little\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + 4 * v.data().size());
    for (float f : v.data()) {
        const std::uint32_t u = std::bit_cast<std::uint32_t>(f);
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
    return out;
}

Volume decode_native(const std::vector<std::uint8_t>& bytes) {
    if (bytes.empty()) throw ParseError("header", "empty file", 1, 1);
    std::size_t eol = 0;
    while (eol < bytes.size() && bytes[eol] != '\n') ++eol;
    if (eol == bytes.size()) throw ParseError("header", "missing header line terminator", 1, static_cast<int>(eol) + 1);
    const std::string line(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(eol));

    // Tokens in fixed order: magic, version, dims=, spacing=, dtype=, endian=
    std::vector<std::pair<std::string_view, int>> tokens;  // text, 1-based column
    std::string_view rest(line);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        const std::size_t sp = rest.find(' ', pos);
        const std::size_t end = sp == std::string_view::npos ? rest.size() : sp;
        tokens.emplace_back(rest.substr(pos, end - pos), static_cast<int>(pos) + 1);
        if (sp == std::string_view::npos) break;
        pos = sp + 1;
    }
    if (tokens.size() != 6)
        throw ParseError("header", "expected 6 space-separated fields, found " + std::to_string(tokens.size()), 1, 1);
    if (tokens[0].first != kMagic) throw ParseError("magic", "expected DSTVOL", 1, tokens[0].second);
    if (tokens[1].first != "1") throw ParseError("version", "unsupported version", 1, tokens[1].second);

    auto value_of = [&](std::size_t i, std::string_view key) {
        const auto& [text, col] = tokens[i];
        if (text.substr(0, key.size()) != key || text.size() <= key.size() || text[key.size()] != '=')
            throw ParseError(std::string(key), "expected '" + std::string(key) + "=...'", 1, col);
        return std::pair{text.substr(key.size() + 1), col + static_cast<int>(key.size()) + 1};
    };

    const auto [dims_text, dims_col] = value_of(2, "dims");
    int dim[3];
    parse_triple(dims_text, "dims", dims_col, dim);
    const auto [sp_text, sp_col] = value_of(3, "spacing");
    double spacing[3];
    parse_triple(sp_text, "spacing", sp_col, spacing);
    const auto [dtype, dtype_col] = value_of(4, "dtype");
    if (dtype != "f32") throw ParseError("dtype", "only f32 is supported", 1, dtype_col);
    const auto [endian, endian_col] = value_of(5, "endian");
    if (endian != "little") throw ParseError("endian", "only little is supported", 1, endian_col);
    for (int a = 0; a < 3; ++a) {
        if (dim[a] < 1) throw ParseError("dims", "each dim must be >= 1", 1, dims_col);
        if (!std::isfinite(spacing[a]) || !(spacing[a] > 0.0))
            throw ParseError("spacing", "spacing must be finite and positive", 1, sp_col);
    }

    const Dims3 d{dim[0], dim[1], dim[2]};
    const std::size_t n = d.voxels();
    const std::size_t payload = bytes.size() - eol - 1;
    if (payload != 4 * n)
        throw ParseError("payload", "expected " + std::to_string(4 * n) + " bytes, found " + std::to_string(payload), 2, 1);
    std::vector<float> data(n);
    const std::uint8_t* p = bytes.data() + eol + 1;
    for (std::size_t i = 0; i < n; ++i, p += 4) {
        const std::uint32_t u = std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
                                std::uint32_t{p[3]} << 24;
        data[i] = std::bit_cast<float>(u);
    }
    return Volume::with_detected_range(d, Spacing3{spacing[0], spacing[1], spacing[2]}, std::move(data));
}

Volume read_native(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in), {});
    return decode_native(bytes);
}

void write_native(const Volume& v, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_native(v);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

Volume read_volume(const std::filesystem::path& path) {
    if (path.extension() == ".dvol") return read_native(path);
    if (path.extension() == ".nii") return read_nifti(path).volume;
    throw IoError("unsupported volume extension '" + path.extension().string() + "' (use .nii or .dvol)");
}

LabelMap read_label(const std::filesystem::path& path) {
    if (path.extension() == ".nii") return read_nifti_label(path);
    if (path.extension() == ".dvol") {
        const Volume v = read_native(path);
        std::vector<label_t> data(v.data().size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            const float f = v.data()[i];
            if (f < 0.0f || f > 65535.0f || f != std::floor(f))
                throw InvalidInput("label file " + path.string() + " holds a non-class value");
            data[i] = static_cast<label_t>(f);
        }
        return LabelMap(v.dims(), v.spacing(), std::move(data));
    }
    throw IoError("unsupported label extension '" + path.extension().string() + "' (use .nii or .dvol)");
}

void write_volume(const Volume& v, const std::filesystem::path& path) {
    if (path.extension() == ".dvol") return write_native(v, path);
    if (path.extension() == ".nii") return write_nifti(v, path);
    throw IoError("unsupported volume extension '" + path.extension().string() + "' (use .nii or .dvol)");
}

void write_label(const LabelMap& l, const std::filesystem::path& path) {
    if (path.extension() == ".nii") return write_nifti(l, path);
    if (path.extension() == ".dvol") {
        std::vector<float> values(l.data().begin(), l.data().end());
        return write_native(Volume(l.dims(), l.spacing(), std::move(values)), path);
    }
    throw IoError("unsupported label extension '" + path.extension().string() + "' (use .nii or .dvol)");
}

}  // namespace dst

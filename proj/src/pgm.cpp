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

#include <cmath>
#include <fstream>
#include <string>

#include "dst/errors.hpp"
#include "dst/io.hpp"

namespace dst {

std::vector<std::uint8_t> encode_slice_pgm(const Volume& v, int axis, int index) {
    if (axis < 0 || axis > 2) throw InvalidParameter("slice axis must be 0, 1 or 2");
    const Dims3& d = v.dims();
    if (index < 0 || index >= d[axis])
        throw InvalidParameter("slice index " + std::to_string(index) + " outside [0, " +
                               std::to_string(d[axis]) + ")");
    // Image columns follow the fastest remaining axis, rows the slowest.
    const int col_axis = axis == 0 ? 1 : 0;
    const int row_axis = axis == 2 ? 1 : 2;
    const int width = d[col_axis];
    const int height = d[row_axis];

    const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + static_cast<std::size_t>(width) * height);
    int pos[3];
    pos[axis] = index;
    for (int r = 0; r < height; ++r) {
        pos[row_axis] = r;
        for (int c = 0; c < width; ++c) {
            pos[col_axis] = c;
            double x = v.at(pos[0], pos[1], pos[2]);
            x = x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
            out.push_back(static_cast<std::uint8_t>(std::lround(255.0 * x)));
        }
    }
    return out;
}

void export_slice(const Volume& v, int axis, int index, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = encode_slice_pgm(v, axis, index);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace dst

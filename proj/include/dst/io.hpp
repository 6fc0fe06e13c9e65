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
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dst/volume.hpp"

namespace dst {

enum class ScalarType { u8, i16, f32 };

struct VolumeHeader {
    Dims3 dims{};
    Spacing3 spacing{};
    ScalarType scalar_type = ScalarType::f32;
    double slope = 1.0;
    double intercept = 0.0;
};

// ---- NIfTI-1, single-file (.nii), uncompressed ---------------------------
//
// Reader: either byte order (detected from sizeof_hdr == 348), magic
// "n+1\0", datatype 2/4/16 (u8/i16/f32) with matching bitpix, dims 1-3
// (higher dims must be 1). Values become slope * raw + intercept when
// scl_slope != 0. pixdim[1..3] is the spacing.
//
// Writer: little-endian, f32 payload, vox_offset 352, slope 1, intercept 0,
// xyzt_units mm, no qform/sform.

struct NiftiVolume {
    Volume volume;
    VolumeHeader header;
};

// The image is flagged normalized iff every value lies in [0,1].
NiftiVolume read_nifti(const std::filesystem::path& path);

// Values must be non-negative integers that fit a label_t.
LabelMap read_nifti_label(const std::filesystem::path& path);

// Throws InvalidInput for non-finite values, IoError if unwritable.
void write_nifti(const Volume& v, const std::filesystem::path& path);
void write_nifti(const LabelMap& l, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_nifti(const Volume& v);
NiftiVolume decode_nifti(const std::vector<std::uint8_t>& bytes);

// ---- Native raw format (.dvol) ---------------------------------------------
//
// One ASCII header line, then the raw little-endian IEEE-754 f32 payload:
//
//   DSTVOL 1 dims=<nx>,<ny>,<nz> spacing=<sx>,<sy>,<sz> dtype=f32 endian=little\n
//
// Fields are separated by single spaces and appear in this order. Spacings
// use shortest round-trip decimal form.

Volume read_native(const std::filesystem::path& path);
void write_native(const Volume& v, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_native(const Volume& v);
Volume decode_native(const std::vector<std::uint8_t>& bytes);

// Picks the format from the extension: .nii -> NIfTI, .dvol -> native.
Volume read_volume(const std::filesystem::path& path);
LabelMap read_label(const std::filesystem::path& path);
void write_volume(const Volume& v, const std::filesystem::path& path);
void write_label(const LabelMap& l, const std::filesystem::path& path);

// ---- Slice preview ---------------------------------------------------------

// Binary PGM (P5, maxval 255) of slice `index` along `axis` (0 = x, 1 = y,
// 2 = z). Pixels are round(255 * clamp(v, 0, 1)), ties away from zero.
// Image rows follow the slowest remaining axis.
std::vector<std::uint8_t> encode_slice_pgm(const Volume& v, int axis, int index);
void export_slice(const Volume& v, int axis, int index, const std::filesystem::path& path);

// ---- Dataset manifest ------------------------------------------------------
//
// One JSON object per line; blank lines and lines starting with '#' are
// skipped:
//
//   {"id": "case01", "image": "img/case01.nii", "label": "lbl/case01.nii", "modality": "mri"}
//
// "id" and "image" are required; "label" marks a label map file and is
// optional; "modality" defaults to "". Relative paths resolve against the
// manifest's directory.

struct ManifestEntry {
    std::string id;
    std::filesystem::path image;
    std::optional<std::filesystem::path> label;
    std::string modality;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    std::vector<std::string> warnings;
};

// Throws ParseError listing every offending line.
DatasetManifest read_manifest(const std::filesystem::path& path);

// Paths are written as given.
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

}  // namespace dst

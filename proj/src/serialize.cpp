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

#include "dst/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dst/errors.hpp"

namespace dst {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

ordered dims_json(const Dims3& d) { return ordered::array({d.x, d.y, d.z}); }

template <typename J>
const J& require(const J& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + "." + key, "missing key");
    return obj.at(key);
}

template <typename T, typename J>
T get_as(const J& v, const std::string& where) {
    try {
        return v.template get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(where, e.what());
    }
}

template <typename J>
double number(const J& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where, "expected a number");
    return v.template get<double>();
}

template <typename J>
Dims3 parse_dims(const J& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw ParseError(where, "expected [x, y, z]");
    Dims3 d;
    int* out[3] = {&d.x, &d.y, &d.z};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!v[i].is_number_integer()) throw ParseError(where, "expected integers");
        *out[i] = v[i].template get<int>();
    }
    return d;
}

template <typename J>
Range parse_range(const J& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ParseError(where, "expected [lo, hi]");
    return Range{number(v[0], where), number(v[1], where)};
}

template <typename J>
std::array<double, 3> parse_triple(const J& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw ParseError(where, "expected three numbers");
    return {number(v[0], where), number(v[1], where), number(v[2], where)};
}

template <typename J>
J parse_document(std::string_view text, const char* what) {
    try {
        return J::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what, e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string config_to_json(const PipelineConfig& config) {
    ordered doc;
    if (!config.preset_name.empty()) doc["preset"] = config.preset_name;
    doc["seed"] = config.seed;
    doc["crop"] = dims_json(config.crop_dims);
    ordered list = ordered::array();
    for (const TransformSpec& s : config.transforms) {
        ordered t;
        t["kind"] = std::string(kind_name(s.kind));
        t["probability"] = s.probability;
        t["magnitude"] = ordered::array({s.magnitude.lo, s.magnitude.hi});
        if (s.aux) t["aux"] = ordered::array({s.aux->lo, s.aux->hi});
        list.push_back(std::move(t));
    }
    doc["transforms"] = std::move(list);
    return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(std::string_view text) {
    const json doc = parse_document<json>(text, "config");
    if (!doc.is_object()) throw ParseError("config", "expected an object");
    PipelineConfig c;
    if (doc.contains("preset")) c.preset_name = get_as<std::string>(doc["preset"], "config.preset");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
            throw ParseError("config.seed", "expected a non-negative integer");
        c.seed = doc["seed"].get<std::uint64_t>();
    }
    c.crop_dims = parse_dims(require(doc, "crop", "config"), "config.crop");
    const json& list = require(doc, "transforms", "config");
    if (!list.is_array()) throw ParseError("config.transforms", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "config.transforms[" + std::to_string(i) + "]";
        const json& t = list[i];
        TransformSpec s;
        try {
            s.kind = parse_kind(get_as<std::string>(require(t, "kind", where), where + ".kind"));
        } catch (const InvalidParameter& e) {
            throw ParseError(where + ".kind", e.what());
        }
        s.probability = number(require(t, "probability", where), where + ".probability");
        s.magnitude = parse_range(require(t, "magnitude", where), where + ".magnitude");
        if (t.contains("aux")) s.aux = parse_range(t["aux"], where + ".aux");
        c.transforms.push_back(s);
    }
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    return config_from_json(read_file(path));
}

std::string draw_to_json(const SampleDraw& d) {
    ordered doc;
    doc["seed"] = d.seed;
    doc["sample_index"] = d.sample_index;
    doc["input_dims"] = dims_json(d.input_dims);
    ordered list = ordered::array();
    for (const TransformDraw& t : d.transforms) {
        ordered e;
        e["kind"] = std::string(kind_name(t.kind));
        e["activated"] = t.activated;
        e["magnitudes"] = t.magnitudes;
        list.push_back(std::move(e));
    }
    doc["transforms"] = std::move(list);
    const SpatialParams& s = d.spatial;
    ordered sp;
    sp["euler_deg"] = s.euler_deg;
    sp["scale"] = s.scale;
    sp["deform_sigma"] = s.deform_sigma;
    sp["deform_alpha"] = s.deform_alpha;
    sp["crop_dims"] = dims_json(s.crop_dims);
    sp["crop_center"] = s.crop_center;
    doc["spatial"] = std::move(sp);
    ordered cub;
    cub["lo"] = dims_json(d.cuboid.lo);
    cub["hi"] = dims_json(d.cuboid.hi);
    cub["empty"] = d.cuboid.empty;
    doc["cuboid"] = std::move(cub);
    return doc.dump(2) + "\n";
}

SampleDraw draw_from_json(std::string_view text) {
    const json doc = parse_document<json>(text, "draw");
    SampleDraw d;
    d.seed = get_as<std::uint64_t>(require(doc, "seed", "draw"), "draw.seed");
    d.sample_index = get_as<std::uint64_t>(require(doc, "sample_index", "draw"), "draw.sample_index");
    d.input_dims = parse_dims(require(doc, "input_dims", "draw"), "draw.input_dims");
    const json& list = require(doc, "transforms", "draw");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "draw.transforms[" + std::to_string(i) + "]";
        TransformDraw t;
        try {
            t.kind = parse_kind(get_as<std::string>(require(list[i], "kind", where), where));
        } catch (const InvalidParameter& e) {
            throw ParseError(where + ".kind", e.what());
        }
        t.activated = get_as<bool>(require(list[i], "activated", where), where + ".activated");
        t.magnitudes = get_as<std::vector<double>>(require(list[i], "magnitudes", where), where + ".magnitudes");
        d.transforms.push_back(std::move(t));
    }
    const json& sp = require(doc, "spatial", "draw");
    d.spatial.euler_deg = parse_triple(require(sp, "euler_deg", "draw.spatial"), "draw.spatial.euler_deg");
    d.spatial.scale = number(require(sp, "scale", "draw.spatial"), "draw.spatial.scale");
    d.spatial.deform_sigma = number(require(sp, "deform_sigma", "draw.spatial"), "draw.spatial.deform_sigma");
    d.spatial.deform_alpha = number(require(sp, "deform_alpha", "draw.spatial"), "draw.spatial.deform_alpha");
    d.spatial.crop_dims = parse_dims(require(sp, "crop_dims", "draw.spatial"), "draw.spatial.crop_dims");
    d.spatial.crop_center = parse_triple(require(sp, "crop_center", "draw.spatial"), "draw.spatial.crop_center");
    if (doc.contains("cuboid")) {
        const json& c = doc["cuboid"];
        d.cuboid.lo = parse_dims(require(c, "lo", "draw.cuboid"), "draw.cuboid.lo");
        d.cuboid.hi = parse_dims(require(c, "hi", "draw.cuboid"), "draw.cuboid.hi");
        d.cuboid.empty = get_as<bool>(require(c, "empty", "draw.cuboid"), "draw.cuboid.empty");
    }
    return d;
}

}  // namespace dst

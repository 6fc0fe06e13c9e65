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

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "dst/errors.hpp"
#include "dst/io.hpp"

namespace dst {

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    const std::filesystem::path base = path.parent_path();

    DatasetManifest m;
    std::vector<std::string> problems;
    std::set<std::string> ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::string where = "line " + std::to_string(lineno);
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            problems.push_back(where + ": malformed record (" + e.what() + ")");
            continue;
        }
        if (!rec.is_object()) {
            problems.push_back(where + ": record must be a JSON object");
            continue;
        }
        auto text = [&](const char* key) -> std::string {
            if (!rec.contains(key)) return {};
            return rec[key].is_string() ? rec[key].get<std::string>() : std::string();
        };
        ManifestEntry e;
        e.id = text("id");
        const std::string image = text("image");
        if (e.id.empty()) problems.push_back(where + ": missing id");
        if (image.empty()) problems.push_back(where + ": missing image path");
        if (e.id.empty() || image.empty()) continue;
        if (!ids.insert(e.id).second) {
            problems.push_back(where + ": duplicate id '" + e.id + "'");
            continue;
        }
        auto resolve = [&](const std::string& p) {
            const std::filesystem::path fp(p);
            return fp.is_absolute() ? fp : base / fp;
        };
        e.image = resolve(image);
        if (const std::string label = text("label"); !label.empty()) e.label = resolve(label);
        e.modality = text("modality");
        m.entries.push_back(std::move(e));
    }
    if (!problems.empty()) {
        std::string msg;
        for (const std::string& p : problems) msg += (msg.empty() ? "" : "; ") + p;
        throw ParseError("manifest", msg);
    }
    if (m.entries.empty()) m.warnings.push_back("manifest " + path.string() + " has no entries");
    return m;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write manifest " + path.string());
    for (const ManifestEntry& e : entries) {
        nlohmann::ordered_json rec;
        rec["id"] = e.id;
        rec["image"] = e.image.generic_string();
        if (e.label) rec["label"] = e.label->generic_string();
        rec["modality"] = e.modality;
        out << rec.dump() << "\n";
    }
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace dst

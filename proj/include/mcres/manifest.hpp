#pragma once

#include <fstream>
#include <string>

#include "json.hpp"
#include "mcres/errors.hpp"
#include "mcres/splitter.hpp"

namespace mcres {

using ordered_json = nlohmann::ordered_json;

/// Manifest is the splitter -> trainer contract; it must round-trip
/// losslessly and be byte-stable for a fixed (corpus, seed).
inline ordered_json split_to_json(const VirtualSplit& split) {
    ordered_json j;
    j["epoch"] = split.epoch;
    j["seed"] = split.seed;
    j["vtr_ids"] = split.vtr_ids;
    ordered_json vte;
    for (Level l : kAllLevels) vte[level_name(l)] = split.vte_ids[level_index(l)];
    j["vte_ids"] = std::move(vte);
    ordered_json ann = ordered_json::object();
    for (const auto& [id, per_level] : split.annotations) {
        ordered_json entry = ordered_json::object();
        for (Level l : kAllLevels) {
            const auto& pairs = per_level[level_index(l)];
            if (pairs.empty()) continue;
            ordered_json list = ordered_json::array();
            for (const KeyPair& kp : pairs) list.push_back({kp.first, kp.second});
            entry[level_name(l)] = std::move(list);
        }
        ann[id] = std::move(entry);
    }
    j["annotations"] = std::move(ann);
    return j;
}

inline VirtualSplit split_from_json(const ordered_json& j) {
    VirtualSplit split;
    split.epoch = j.at("epoch").get<int>();
    split.seed = j.at("seed").get<std::uint64_t>();
    split.vtr_ids = j.at("vtr_ids").get<std::vector<std::string>>();
    for (Level l : kAllLevels) {
        split.vte_ids[level_index(l)] =
            j.at("vte_ids").at(level_name(l)).get<std::vector<std::string>>();
        split.level_empty[level_index(l)] = split.vte_ids[level_index(l)].empty();
    }
    for (const auto& [id, entry] : j.at("annotations").items()) {
        auto& per_level = split.annotations[id];
        for (Level l : kAllLevels) {
            if (!entry.contains(level_name(l))) continue;
            for (const auto& pair : entry.at(level_name(l)))
                per_level[level_index(l)].emplace_back(pair.at(0).get<std::string>(),
                                                       pair.at(1).get<std::string>());
        }
    }
    return split;
}

inline void write_split_manifest(const VirtualSplit& split, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << split_to_json(split).dump() << '\n';
}

inline VirtualSplit read_split_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    ordered_json j;
    in >> j;
    return split_from_json(j);
}

}  // namespace mcres

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mcres/errors.hpp"
#include "mcres/sample.hpp"
#include "mcres/synthetic.hpp"

namespace mcres {

using ordered_json = nlohmann::ordered_json;

// Dataset files are JSONL: one record per line with fields `id`, `tree`
// (bracketed string), `image` (path or inline scene spec) and `mask` (path
// or inline bitmap). UTF-8, LF line endings.

inline ordered_json scene_to_json(const SceneSpec& scene) {
    ordered_json j;
    j["h"] = scene.h;
    j["w"] = scene.w;
    j["referent"] = scene.referent;
    ordered_json objs = ordered_json::array();
    for (const SceneObject& o : scene.objects) {
        ordered_json oj;
        oj["shape"] = o.shape;
        oj["color"] = o.color;
        oj["size"] = o.large ? "large" : "small";
        oj["r"] = o.r;
        oj["c"] = o.c;
        objs.push_back(std::move(oj));
    }
    j["objects"] = std::move(objs);
    return j;
}

inline SceneSpec scene_from_json(const ordered_json& j) {
    SceneSpec scene;
    scene.h = j.at("h").get<int>();
    scene.w = j.at("w").get<int>();
    scene.referent = j.at("referent").get<int>();
    for (const auto& oj : j.at("objects")) {
        SceneObject o;
        o.shape = oj.at("shape").get<std::string>();
        o.color = oj.at("color").get<std::string>();
        o.large = oj.at("size").get<std::string>() == "large";
        o.r = oj.at("r").get<int>();
        o.c = oj.at("c").get<int>();
        scene.objects.push_back(std::move(o));
    }
    return scene;
}

inline ordered_json mask_to_json(const Mask& mask) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < mask.h; ++r) {
        std::string row(static_cast<std::size_t>(mask.w), '0');
        for (int c = 0; c < mask.w; ++c)
            if (mask.at(r, c)) row[static_cast<std::size_t>(c)] = '1';
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Mask mask_from_json(const ordered_json& j) {
    Mask mask;
    mask.h = static_cast<int>(j.size());
    mask.w = mask.h > 0 ? static_cast<int>(j.at(0).get<std::string>().size()) : 0;
    mask.cells.reserve(static_cast<std::size_t>(mask.h) * mask.w);
    for (const auto& rj : j) {
        std::string row = rj.get<std::string>();
        if (static_cast<int>(row.size()) != mask.w)
            throw std::runtime_error("ragged mask rows");
        for (char ch : row) mask.cells.push_back(ch == '1' ? 1 : 0);
    }
    return mask;
}

inline ordered_json sample_to_json(const Sample& s) {
    ordered_json j;
    j["id"] = s.id;
    j["tree"] = to_bracketed(s.tree);
    if (s.scene)
        j["image"] = scene_to_json(*s.scene);
    else
        j["image"] = s.image_ref;
    if (s.mask)
        j["mask"] = mask_to_json(*s.mask);
    else
        j["mask"] = s.mask_ref;
    if (s.novel) j["novel"] = *s.novel;
    return j;
}

inline Sample sample_from_json(const ordered_json& j) {
    Sample s = Sample::make(j.at("id").get<std::string>(),
                            parse_bracketed(j.at("tree").get<std::string>()));
    const auto& image = j.at("image");
    if (image.is_object())
        s.scene = scene_from_json(image);
    else
        s.image_ref = image.get<std::string>();
    const auto& mask = j.at("mask");
    if (mask.is_array())
        s.mask = mask_from_json(mask);
    else
        s.mask_ref = mask.get<std::string>();
    if (j.contains("novel")) s.novel = j.at("novel").get<bool>();
    return s;
}

inline void write_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const Sample& s : corpus) out << sample_to_json(s).dump() << '\n';
}

inline Corpus read_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    Corpus corpus;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            corpus.push_back(sample_from_json(ordered_json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return corpus;
}

inline void write_holdout_plan(const HoldoutPlan& plan, const std::string& path) {
    ordered_json j;
    for (Level l : kAllLevels) {
        ordered_json list = ordered_json::array();
        for (const KeyPair& kp : plan.banned[level_index(l)])
            list.push_back({kp.first, kp.second});
        j[level_name(l)] = std::move(list);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << ordered_json{{"banned", std::move(j)}}.dump(2) << '\n';
}

inline HoldoutPlan read_holdout_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    ordered_json j;
    in >> j;
    HoldoutPlan plan;
    for (Level l : kAllLevels)
        for (const auto& pair : j.at("banned").at(level_name(l)))
            plan.banned[level_index(l)].emplace_back(pair.at(0).get<std::string>(),
                                                     pair.at(1).get<std::string>());
    return plan;
}

}  // namespace mcres

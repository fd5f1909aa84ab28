#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcres/compositions.hpp"
#include "mcres/parse.hpp"
#include "mcres/scene.hpp"

namespace mcres {

/// An expression paired with its visual data. Compositions are extracted
/// once at construction and cached per level.
struct Sample {
    std::string id;
    std::vector<std::string> tokens;
    ParseTree tree;
    std::array<std::vector<Composition>, 3> compositions;

    std::string image_ref;  // path reference, when the scene is external
    std::string mask_ref;
    std::optional<SceneSpec> scene;  // inline scene spec
    std::optional<Mask> mask;        // inline ground-truth mask
    std::optional<bool> novel;       // generator's Novel label (test corpora)

    static Sample make(std::string id, ParseTree tree) {
        Sample s;
        s.id = std::move(id);
        s.tokens = yield_of(tree);
        s.compositions = group_by_level(extract_compositions(tree));
        s.tree = std::move(tree);
        return s;
    }

    const std::vector<Composition>& level_compositions(Level l) const {
        return compositions[level_index(l)];
    }
};

using Corpus = std::vector<Sample>;

}  // namespace mcres

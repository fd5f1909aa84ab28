#pragma once

#include <array>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcres/sample.hpp"
#include "mcres/vocab.hpp"

namespace mcres {

/// Per-level composition key sets plus component inventory of a corpus.
/// This is the reference a test corpus is labeled against.
struct CorpusCompositions {
    std::array<std::unordered_set<std::string>, 3> keys;
    ComponentInventory inventory;

    bool contains(Level l, const std::string& left, const std::string& right) const {
        return keys[level_index(l)].count(left + '\t' + right) > 0;
    }
};

inline CorpusCompositions corpus_compositions(const Corpus& corpus) {
    CorpusCompositions cc;
    cc.inventory = component_inventory(corpus);
    for (const Sample& s : corpus)
        for (Level l : kAllLevels)
            for (const Composition& c : s.level_compositions(l))
                cc.keys[level_index(l)].insert(c.left.key + '\t' + c.right.key);
    return cc;
}

/// A sample is Novel iff it contains at least one composition unseen in the
/// reference corpus whose components both exist there.
inline bool sample_is_novel(const Sample& s, const CorpusCompositions& train) {
    for (Level l : kAllLevels) {
        for (const Composition& c : s.level_compositions(l)) {
            if (train.contains(l, c.left.key, c.right.key)) continue;
            if (train.inventory.has(c.left) && train.inventory.has(c.right)) return true;
        }
    }
    return false;
}

inline std::vector<bool> novel_labels(const Corpus& test, const CorpusCompositions& train) {
    std::vector<bool> out;
    out.reserve(test.size());
    for (const Sample& s : test) out.push_back(sample_is_novel(s, train));
    return out;
}

}  // namespace mcres

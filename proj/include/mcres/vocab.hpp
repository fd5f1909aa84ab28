#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcres/compositions.hpp"
#include "mcres/errors.hpp"
#include "mcres/sample.hpp"

namespace mcres {

/// Dense, lexicographically ordered key <-> index bijection.
class KeyIndex {
public:
    KeyIndex() = default;

    static KeyIndex from_keys(std::vector<std::string> keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        KeyIndex idx;
        idx.keys_ = std::move(keys);
        for (std::size_t i = 0; i < idx.keys_.size(); ++i)
            idx.pos_[idx.keys_[i]] = static_cast<int>(i);
        return idx;
    }

    int size() const { return static_cast<int>(keys_.size()); }
    bool contains(const std::string& k) const { return pos_.count(k) > 0; }
    const std::string& key(int i) const { return keys_[static_cast<std::size_t>(i)]; }

    int index_of(const std::string& k) const {
        auto it = pos_.find(k);
        if (it == pos_.end()) throw UnindexedComponent(k);
        return it->second;
    }

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, int> pos_;
};

struct Vocabulary : KeyIndex {};
struct PhraseInventory : KeyIndex {};

/// Vocabulary over every token of every sample, lexicographic order.
inline Vocabulary build_vocab(const Corpus& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    std::vector<std::string> words;
    for (const Sample& s : corpus)
        words.insert(words.end(), s.tokens.begin(), s.tokens.end());
    return Vocabulary{KeyIndex::from_keys(std::move(words))};
}

/// Index over every Phrase component occurring anywhere in the corpus.
inline PhraseInventory build_phrase_inventory(const Corpus& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    std::vector<std::string> keys;
    for (const Sample& s : corpus)
        for (const auto& per_level : s.compositions)
            for (const Composition& c : per_level) {
                if (!c.left.is_word()) keys.push_back(c.left.key);
                if (!c.right.is_word()) keys.push_back(c.right.key);
            }
    return PhraseInventory{KeyIndex::from_keys(std::move(keys))};
}

/// Which words and phrases "exist" in a sample set: words as tokens,
/// phrases as the yield of some constituent of some tree.
struct ComponentInventory {
    std::unordered_set<std::string> words;
    std::unordered_set<std::string> phrases;

    bool has(const Component& c) const {
        return c.is_word() ? words.count(c.key) > 0 : phrases.count(c.key) > 0;
    }
    bool has_word(const std::string& k) const { return words.count(k) > 0; }
    bool has_phrase(const std::string& k) const { return phrases.count(k) > 0; }
};

namespace detail {

inline void collect_constituent_yields(const Node& n, ComponentInventory& inv) {
    if (n.is_leaf()) {
        inv.words.insert(n.token.text);
        return;
    }
    std::vector<std::string> y = yield_of(n);
    if (y.size() >= 2) inv.phrases.insert(Component::join(y));
    for (const Node& c : n.children) collect_constituent_yields(c, inv);
}

}  // namespace detail

template <typename SamplePtrRange>
ComponentInventory component_inventory(const SamplePtrRange& samples) {
    ComponentInventory inv;
    for (const Sample* s : samples) detail::collect_constituent_yields(s->tree, inv);
    return inv;
}

inline ComponentInventory component_inventory(const Corpus& corpus) {
    std::vector<const Sample*> ptrs;
    ptrs.reserve(corpus.size());
    for (const Sample& s : corpus) ptrs.push_back(&s);
    return component_inventory(ptrs);
}

}  // namespace mcres

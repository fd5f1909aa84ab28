#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcres/errors.hpp"
#include "mcres/sample.hpp"
#include "mcres/vocab.hpp"

namespace mcres {

/// Binary composition-occurrence matrix for one level, stored sparsely over
/// a unified index space (words first, then phrases). Entry (i,j) = 1 iff
/// the ordered composition (i,j) occurs in the indexed sample set.
struct OccurrenceMatrix {
    Level level = Level::WW;
    int n_words = 0;
    int n_phrases = 0;
    std::unordered_set<std::uint64_t> entries;

    std::uint64_t stride() const { return static_cast<std::uint64_t>(n_words) + n_phrases; }

    std::uint64_t code(const Component& c, const Vocabulary& vocab,
                       const PhraseInventory& phrases) const {
        if (c.is_word()) return static_cast<std::uint64_t>(vocab.index_of(c.key));
        return static_cast<std::uint64_t>(n_words) + phrases.index_of(c.key);
    }

    bool contains(std::uint64_t left_code, std::uint64_t right_code) const {
        return entries.count(left_code * stride() + right_code) > 0;
    }
};

template <typename SamplePtrRange>
OccurrenceMatrix build_matrix(const SamplePtrRange& samples, Level level,
                              const Vocabulary& vocab, const PhraseInventory& phrases) {
    OccurrenceMatrix m;
    m.level = level;
    m.n_words = vocab.size();
    m.n_phrases = phrases.size();
    const std::uint64_t stride = m.stride();
    for (const Sample* s : samples) {
        for (const Composition& c : s->level_compositions(level)) {
            std::uint64_t l = m.code(c.left, vocab, phrases);
            std::uint64_t r = m.code(c.right, vocab, phrases);
            m.entries.insert(l * stride + r);
        }
    }
    return m;
}

inline OccurrenceMatrix build_matrix(const Corpus& corpus, Level level,
                                     const Vocabulary& vocab, const PhraseInventory& phrases) {
    std::vector<const Sample*> ptrs;
    ptrs.reserve(corpus.size());
    for (const Sample& s : corpus) ptrs.push_back(&s);
    return build_matrix(ptrs, level, vocab, phrases);
}

namespace detail {

inline std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> toks;
    std::size_t start = 0;
    while (start < key.size()) {
        std::size_t sp = key.find(' ', start);
        if (sp == std::string::npos) sp = key.size();
        toks.push_back(key.substr(start, sp - start));
        start = sp + 1;
    }
    return toks;
}

inline Component decode_component(std::uint64_t code, int n_words, const Vocabulary& vocab,
                                  const PhraseInventory& phrases) {
    if (code < static_cast<std::uint64_t>(n_words))
        return Component::from_tokens({vocab.key(static_cast<int>(code))});
    return Component::from_tokens(
        split_key(phrases.key(static_cast<int>(code - static_cast<std::uint64_t>(n_words)))));
}

}  // namespace detail

/// Difference-matrix novelty: the compositions whose entry is +1 in
/// M_candi - M_vtr and whose left and right components both exist in the
/// virtual training set. Entries of 0 or -1 never qualify. The result is
/// sorted by (left key, right key).
inline std::vector<Composition> identify_novel(const OccurrenceMatrix& m_candi,
                                               const OccurrenceMatrix& m_vtr,
                                               const ComponentInventory& vtr_components,
                                               Level level, const Vocabulary& vocab,
                                               const PhraseInventory& phrases) {
    if (m_candi.level != level || m_vtr.level != level)
        throw DimensionMismatch("matrix level does not match requested level");
    if (m_candi.n_words != m_vtr.n_words || m_candi.n_phrases != m_vtr.n_phrases)
        throw DimensionMismatch("matrices do not share an index space");

    const std::uint64_t stride = m_candi.stride();
    std::vector<Composition> out;
    for (std::uint64_t entry : m_candi.entries) {
        if (m_vtr.entries.count(entry)) continue;  // diff entry 0
        Component left =
            detail::decode_component(entry / stride, m_candi.n_words, vocab, phrases);
        Component right =
            detail::decode_component(entry % stride, m_candi.n_words, vocab, phrases);
        if (!vtr_components.has(left) || !vtr_components.has(right)) continue;
        Composition c;
        c.level = level;
        c.left = std::move(left);
        c.right = std::move(right);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Composition& a, const Composition& b) {
        if (a.left.key != b.left.key) return a.left.key < b.left.key;
        return a.right.key < b.right.key;
    });
    return out;
}

}  // namespace mcres

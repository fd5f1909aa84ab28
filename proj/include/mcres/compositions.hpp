#pragma once

#include <algorithm>
#include <array>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mcres/parse.hpp"

namespace mcres {

/// Composition levels: word-word, word-phrase, phrase-phrase.
enum class Level : int { WW = 0, WP = 1, PP = 2 };

inline constexpr std::array<Level, 3> kAllLevels{Level::WW, Level::WP, Level::PP};

inline const char* level_name(Level l) {
    switch (l) {
        case Level::WW: return "WW";
        case Level::WP: return "WP";
        case Level::PP: return "PP";
    }
    return "??";
}

inline int level_index(Level l) { return static_cast<int>(l); }

/// One side of a composition: a word (single token) or a phrase (>= 2 tokens
/// forming a grammatical unit). `key` is the lowercase space-joined yield and
/// is the component's identity everywhere downstream.
struct Component {
    enum class Kind { Word, Phrase } kind;
    std::vector<std::string> tokens;
    std::string key;

    static Component from_tokens(std::vector<std::string> toks) {
        Component c;
        c.kind = toks.size() == 1 ? Kind::Word : Kind::Phrase;
        c.key = join(toks);
        c.tokens = std::move(toks);
        return c;
    }

    static std::string join(const std::vector<std::string>& toks) {
        std::string key;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (i) key += ' ';
            key += toks[i];
        }
        return key;
    }

    bool is_word() const { return kind == Kind::Word; }
};

using KeyPair = std::pair<std::string, std::string>;

/// A sibling pair in a parse tree. `left` precedes `right` in surface order;
/// the level follows from the two component kinds.
struct Composition {
    Level level;
    Component left;
    Component right;

    std::pair<std::string, std::string> key() const { return {left.key, right.key}; }
};

inline Level level_of(const Component& a, const Component& b) {
    if (a.is_word() && b.is_word()) return Level::WW;
    if (!a.is_word() && !b.is_word()) return Level::PP;
    return Level::WP;
}

/// Returns (left, right) exactly as stored.
inline std::pair<const Component&, const Component&> components_of(const Composition& c) {
    return {c.left, c.right};
}

namespace detail {

inline void extract_rec(const Node& n, std::vector<Composition>& out) {
    if (n.is_leaf()) return;
    for (const Node& c : n.children) extract_rec(c, out);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        for (std::size_t j = i + 1; j < n.children.size(); ++j) {
            Component left = Component::from_tokens(yield_of(n.children[i]));
            Component right = Component::from_tokens(yield_of(n.children[j]));
            Composition comp;
            comp.level = level_of(left, right);
            comp.left = std::move(left);
            comp.right = std::move(right);
            out.push_back(std::move(comp));
        }
    }
}

}  // namespace detail

/// All meaningful compositions of a tree: for every internal node, every
/// pair of distinct children ordered by surface position. De-duplicated by
/// (level, left key, right key) and sorted, so identical trees always yield
/// the identical list.
inline std::vector<Composition> extract_compositions(const Node& tree) {
    std::vector<Composition> out;
    detail::extract_rec(tree, out);
    auto less = [](const Composition& a, const Composition& b) {
        if (a.level != b.level) return level_index(a.level) < level_index(b.level);
        if (a.left.key != b.left.key) return a.left.key < b.left.key;
        return a.right.key < b.right.key;
    };
    auto same = [](const Composition& a, const Composition& b) {
        return a.level == b.level && a.left.key == b.left.key && a.right.key == b.right.key;
    };
    std::sort(out.begin(), out.end(), less);
    out.erase(std::unique(out.begin(), out.end(), same), out.end());
    return out;
}

/// Compositions grouped per level, in the extraction order.
inline std::array<std::vector<Composition>, 3> group_by_level(std::vector<Composition> comps) {
    std::array<std::vector<Composition>, 3> out;
    for (auto& c : comps) out[level_index(c.level)].push_back(std::move(c));
    return out;
}

/// Debug/test dump format: one line per composition,
/// `LEVEL<TAB>left_key<TAB>right_key`.
inline void dump_compositions(const std::vector<Composition>& comps, std::ostream& os) {
    for (const auto& c : comps)
        os << level_name(c.level) << '\t' << c.left.key << '\t' << c.right.key << '\n';
}

}  // namespace mcres

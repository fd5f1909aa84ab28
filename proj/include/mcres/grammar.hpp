#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcres/errors.hpp"
#include "mcres/parse.hpp"

namespace mcres {

/// Word classes of the synthetic expression grammar:
///   EXPR -> NP | NP REL NP
///   NP   -> ATTR* NOUN
///   REL  -> head "of"        (two-token relation phrase)
/// Classes must be pairwise disjoint, which makes the grammar unambiguous.
struct SyntheticGrammar {
    std::vector<std::string> nouns;
    std::vector<std::string> attributes;
    std::vector<std::string> relation_heads;
    std::string relation_tail = "of";

    std::unordered_set<std::string> noun_set;
    std::unordered_set<std::string> attr_set;
    std::unordered_set<std::string> head_set;

    void index() {
        noun_set = {nouns.begin(), nouns.end()};
        attr_set = {attributes.begin(), attributes.end()};
        head_set = {relation_heads.begin(), relation_heads.end()};
        for (const auto& n : nouns)
            if (attr_set.count(n) || head_set.count(n) || n == relation_tail)
                throw std::invalid_argument("grammar word classes overlap: " + n);
        for (const auto& a : attributes)
            if (head_set.count(a) || a == relation_tail)
                throw std::invalid_argument("grammar word classes overlap: " + a);
    }

    bool is_noun(const std::string& w) const { return noun_set.count(w) > 0; }
    bool is_attr(const std::string& w) const { return attr_set.count(w) > 0; }
    bool is_head(const std::string& w) const { return head_set.count(w) > 0; }
};

namespace detail {

inline Node leaf(const std::string& text, const std::string& tag = {}) {
    Node n;
    n.token.text = text;
    n.label = tag;
    return n;
}

// NP' chain: the bare NOUN leaf at the bottom, binary (ATTR, rest) above it,
// so attribute-noun pairs always show up as sibling pairs.
inline Node np_chain(std::span<const std::string> attrs, const std::string& noun) {
    if (attrs.empty()) return leaf(noun, "NOUN");
    Node n;
    n.label = "NP";
    n.children.push_back(leaf(attrs.front(), "ATTR"));
    n.children.push_back(np_chain(attrs.subspan(1), noun));
    return n;
}

inline Node np_tree(std::span<const std::string> attrs, const std::string& noun) {
    if (attrs.empty()) {
        Node n;
        n.label = "NP";
        n.children.push_back(leaf(noun, "NOUN"));
        return n;
    }
    return np_chain(attrs, noun);
}

}  // namespace detail

/// Parses a token sequence of the synthetic grammar into its unique tree.
/// Throws NotDerivable for anything outside the grammar.
inline ParseTree parse_synthetic(std::span<const std::string> tokens,
                                 const SyntheticGrammar& g) {
    std::size_t pos = 0;
    auto parse_np = [&]() -> Node {
        std::vector<std::string> attrs;
        while (pos < tokens.size() && g.is_attr(tokens[pos])) attrs.push_back(tokens[pos++]);
        if (pos >= tokens.size() || !g.is_noun(tokens[pos]))
            throw NotDerivable("expected noun at token " + std::to_string(pos));
        const std::string& noun = tokens[pos++];
        return detail::np_tree(attrs, noun);
    };

    if (tokens.empty()) throw NotDerivable("empty expression");
    Node np1 = parse_np();
    if (pos == tokens.size()) return np1;

    if (!g.is_head(tokens[pos]))
        throw NotDerivable("expected relation at token " + std::to_string(pos));
    Node rel;
    rel.label = "REL";
    rel.children.push_back(detail::leaf(tokens[pos++]));
    if (pos >= tokens.size() || tokens[pos] != g.relation_tail)
        throw NotDerivable("expected '" + g.relation_tail + "' at token " + std::to_string(pos));
    rel.children.push_back(detail::leaf(tokens[pos++]));

    Node np2 = parse_np();
    if (pos != tokens.size())
        throw NotDerivable("trailing tokens at position " + std::to_string(pos));

    Node vp;
    vp.label = "VP";
    vp.children.push_back(std::move(rel));
    vp.children.push_back(std::move(np2));

    Node expr;
    expr.label = "EXPR";
    expr.children.push_back(std::move(np1));
    expr.children.push_back(std::move(vp));
    return expr;
}

inline ParseTree parse_synthetic(const std::vector<std::string>& tokens,
                                 const SyntheticGrammar& g) {
    return parse_synthetic(std::span<const std::string>(tokens), g);
}

}  // namespace mcres

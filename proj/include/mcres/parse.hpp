#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mcres/errors.hpp"

namespace mcres {

/// One surface word of an expression. Text is lowercased on ingestion;
/// vocab_id is filled in once a corpus vocabulary exists (-1 = unset).
struct Token {
    std::string text;
    int vocab_id = -1;
};

/// Ordered constituency tree node. Leaves carry a token (children empty);
/// internal nodes carry one or more children. `label` holds the constituent
/// tag (or the POS tag a leaf was wrapped in); downstream logic never reads
/// it, it is kept only so trees re-serialize faithfully.
struct Node {
    std::string label;
    Token token;
    std::vector<Node> children;

    bool is_leaf() const { return children.empty(); }
};

using ParseTree = Node;

inline void collect_yield(const Node& n, std::vector<std::string>& out) {
    if (n.is_leaf()) {
        out.push_back(n.token.text);
        return;
    }
    for (const Node& c : n.children) collect_yield(c, out);
}

/// Left-to-right leaf tokens of the subtree rooted at `n`.
inline std::vector<std::string> yield_of(const Node& n) {
    std::vector<std::string> out;
    collect_yield(n, out);
    return out;
}

inline std::size_t leaf_count(const Node& n) {
    if (n.is_leaf()) return 1;
    std::size_t c = 0;
    for (const Node& ch : n.children) c += leaf_count(ch);
    return c;
}

/// Shape + token equality; labels are ignored by design.
inline bool equal_structure(const Node& a, const Node& b) {
    if (a.is_leaf() != b.is_leaf()) return false;
    if (a.is_leaf()) return a.token.text == b.token.text;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!equal_structure(a.children[i], b.children[i])) return false;
    return true;
}

namespace detail {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

class BracketedParser {
public:
    explicit BracketedParser(std::string_view text) : text_(text) {}

    Node parse() {
        skip_ws();
        if (pos_ >= text_.size())
            throw EmptyInput("empty input", pos_);
        Node root = parse_element();
        skip_ws();
        if (pos_ < text_.size())
            throw UnbalancedParens("trailing content after tree", pos_);
        return root;
    }

private:
    Node parse_element() {
        if (text_[pos_] == ')')
            throw UnbalancedParens("unmatched ')'", pos_);
        if (text_[pos_] != '(') {
            Node leaf;
            leaf.token.text = to_lower(read_atom());
            return leaf;
        }
        ++pos_;  // consume '('
        skip_ws();
        std::string label;
        bool label_present = false;
        if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
            label = read_atom();
            label_present = true;
            skip_ws();
        }
        std::vector<Node> children;
        std::vector<bool> child_was_bare;
        while (true) {
            if (pos_ >= text_.size())
                throw UnbalancedParens("missing ')'", pos_);
            if (text_[pos_] == ')') break;
            child_was_bare.push_back(text_[pos_] != '(');
            children.push_back(parse_element());
            skip_ws();
        }
        if (children.empty())
            throw EmptyConstituent(label_present
                                       ? "constituent '" + label + "' has no children"
                                       : "empty constituent",
                                   pos_);
        ++pos_;  // consume ')'
        // Penn-style preterminal (TAG word) collapses to a leaf carrying the tag.
        if (children.size() == 1 && child_was_bare[0] && label_present) {
            Node leaf = std::move(children[0]);
            leaf.label = label;
            return leaf;
        }
        Node node;
        node.label = std::move(label);
        node.children = std::move(children);
        return node;
    }

    std::string read_atom() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a Penn-style bracketed tree, e.g. `(NP (JJ white) (NN bird))`.
/// Leaf tokens are lowercased. Throws UnbalancedParens / EmptyConstituent /
/// EmptyInput, each carrying the byte offset of the defect.
inline ParseTree parse_bracketed(std::string_view text) {
    return detail::BracketedParser(text).parse();
}

inline void append_bracketed(const Node& n, std::string& out) {
    if (n.is_leaf()) {
        if (n.label.empty()) {
            out += n.token.text;
        } else {
            out += '(';
            out += n.label;
            out += ' ';
            out += n.token.text;
            out += ')';
        }
        return;
    }
    out += '(';
    out += n.label;
    for (const Node& c : n.children) {
        out += ' ';
        append_bracketed(c, out);
    }
    out += ')';
}

/// Serializes a tree back to bracketed form; re-parsing yields a
/// structurally identical tree.
inline std::string to_bracketed(const Node& n) {
    std::string out;
    append_bracketed(n, out);
    return out;
}

/// ParseTree invariant check (used by tests and ingestion): internal nodes
/// have >= 1 child, leaf tokens are non-empty lowercase without whitespace.
inline bool valid_tree(const Node& n) {
    if (n.is_leaf()) {
        if (n.token.text.empty()) return false;
        for (char c : n.token.text) {
            if (std::isspace(static_cast<unsigned char>(c))) return false;
            if (std::isupper(static_cast<unsigned char>(c))) return false;
        }
        return true;
    }
    for (const Node& c : n.children)
        if (!valid_tree(c)) return false;
    return true;
}

}  // namespace mcres

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "mcres/compositions.hpp"
#include "mcres/parse.hpp"
#include "support/trees.hpp"

using namespace mcres;

namespace {

bool contains(const std::vector<Composition>& comps, Level level, const std::string& l,
              const std::string& r) {
    for (const auto& c : comps)
        if (c.level == level && c.left.key == l && c.right.key == r) return true;
    return false;
}

int count_internal(const Node& n) {
    if (n.is_leaf()) return 0;
    int c = 1;
    for (const Node& ch : n.children) c += count_internal(ch);
    return c;
}

}  // namespace

TEST_CASE("all three levels from the example tree") {
    auto comps = extract_compositions(testsupport::fig_tree());
    REQUIRE(contains(comps, Level::WW, "white", "bird"));
    REQUIRE(contains(comps, Level::WW, "in", "water"));
    REQUIRE(contains(comps, Level::WP, "standing", "in water"));
    REQUIRE(contains(comps, Level::PP, "white bird", "standing in water"));
    REQUIRE(comps.size() == 4);
}

TEST_CASE("single leaf has no compositions") {
    REQUIRE(extract_compositions(testsupport::leaf("dog", "NN")).empty());
}

TEST_CASE("three word children give all pairs") {
    Node t = testsupport::internal(
        "X", {testsupport::leaf("a", "T"), testsupport::leaf("b", "T"),
              testsupport::leaf("c", "T")});
    auto comps = extract_compositions(t);
    REQUIRE(comps.size() == 3);
    REQUIRE(contains(comps, Level::WW, "a", "b"));
    REQUIRE(contains(comps, Level::WW, "a", "c"));
    REQUIRE(contains(comps, Level::WW, "b", "c"));
}

TEST_CASE("components_of returns left and right positionally") {
    auto comps = extract_compositions(testsupport::fig_tree());
    for (const auto& c : comps) {
        auto [l, r] = components_of(c);
        REQUIRE(l.key == c.left.key);
        REQUIRE(r.key == c.right.key);
    }
}

TEST_CASE("level predicate matches component kinds") {
    mcres::Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        Node t = testsupport::random_tree(rng, 4);
        for (const auto& c : extract_compositions(t)) {
            const bool lw = c.left.is_word();
            const bool rw = c.right.is_word();
            if (lw && rw) REQUIRE(c.level == Level::WW);
            if (!lw && !rw) REQUIRE(c.level == Level::PP);
            if (lw != rw) REQUIRE(c.level == Level::WP);
            REQUIRE((c.left.tokens.size() == 1) == lw);
            REQUIRE(c.left.key == Component::join(c.left.tokens));
            REQUIRE(c.right.key == Component::join(c.right.tokens));
        }
    }
}

TEST_CASE("strictly binary trees yield one composition per internal node") {
    mcres::Rng rng(1234);
    for (int i = 0; i < 300; ++i) {
        int internal_nodes = 1 + static_cast<int>(rng.below(8));
        Node t = testsupport::random_binary_tree(rng, internal_nodes);
        REQUIRE(count_internal(t) == internal_nodes);
        // count before de-duplication: sum over internal nodes of C(#children, 2)
        std::vector<Composition> raw;
        mcres::detail::extract_rec(t, raw);
        REQUIRE(raw.size() == static_cast<std::size_t>(internal_nodes));
    }
}

TEST_CASE("identical trees yield identical composition lists") {
    mcres::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Node t = testsupport::random_tree(rng, 4);
        auto a = extract_compositions(t);
        auto b = extract_compositions(t);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            REQUIRE(a[k].level == b[k].level);
            REQUIRE(a[k].key() == b[k].key());
        }
    }
}

TEST_CASE("duplicate sibling pairs are de-duplicated by level and key") {
    // same (a,b) pair under two different parents
    Node t = testsupport::internal(
        "X",
        {testsupport::internal("Y", {testsupport::leaf("a", "T"), testsupport::leaf("b", "T")}),
         testsupport::internal("Z", {testsupport::leaf("a", "T"), testsupport::leaf("b", "T")})});
    auto comps = extract_compositions(t);
    int ww_ab = 0;
    for (const auto& c : comps)
        if (c.level == Level::WW && c.left.key == "a" && c.right.key == "b") ++ww_ab;
    REQUIRE(ww_ab == 1);
    REQUIRE(contains(comps, Level::PP, "a b", "a b"));
}

TEST_CASE("dump format") {
    auto comps = extract_compositions(parse_bracketed("(NP (JJ dark) (NN coffee))"));
    std::ostringstream os;
    dump_compositions(comps, os);
    REQUIRE(os.str() == "WW\tdark\tcoffee\n");
}

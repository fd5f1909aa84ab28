#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mcres/manifest.hpp"
#include "mcres/parse.hpp"
#include "mcres/splitter.hpp"
#include "support/oracles.hpp"
#include "support/trees.hpp"

using namespace mcres;
using testsupport::KeyPair;

namespace {

Corpus two_word_corpus(const std::vector<std::string>& pairs) {
    // each entry "dark table" becomes a two-leaf tree
    Corpus corpus;
    int i = 0;
    for (const auto& expr : pairs) {
        auto sp = expr.find(' ');
        std::string text = "(NP (JJ " + expr.substr(0, sp) + ") (NN " + expr.substr(sp + 1) + "))";
        corpus.push_back(Sample::make("s" + std::to_string(i++), parse_bracketed(text)));
    }
    return corpus;
}

std::vector<const Sample*> all_ptrs(const Corpus& c) {
    std::vector<const Sample*> out;
    for (const auto& s : c) out.push_back(&s);
    return out;
}

}  // namespace

TEST_CASE("vocabulary size and determinism") {
    Corpus corpus = two_word_corpus({"dark table", "black coffee"});
    Vocabulary v = build_vocab(corpus);
    REQUIRE(v.size() == 4);
    REQUIRE(v.key(0) == "black");  // lexicographic
    REQUIRE(v.index_of("table") == 3);

    Corpus one;
    one.push_back(Sample::make("s0", parse_bracketed("(NN dog)")));
    REQUIRE(build_vocab(one).size() == 1);

    Corpus dup = two_word_corpus({"dark table", "dark table", "black coffee"});
    REQUIRE(build_vocab(dup).size() == 4);

    REQUIRE_THROWS_AS(build_vocab(Corpus{}), EmptyCorpus);
}

TEST_CASE("occurrence matrix entries") {
    Corpus corpus = two_word_corpus({"dark table", "black coffee"});
    Vocabulary v = build_vocab(corpus);
    PhraseInventory p = build_phrase_inventory(corpus);

    OccurrenceMatrix empty = build_matrix(std::vector<const Sample*>{}, Level::WW, v, p);
    REQUIRE(empty.entries.empty());

    OccurrenceMatrix m = build_matrix(corpus, Level::WW, v, p);
    REQUIRE(m.entries.size() == 2);
    auto code = [&](const std::string& w) { return static_cast<std::uint64_t>(v.index_of(w)); };
    REQUIRE(m.contains(code("dark"), code("table")));
    REQUIRE(m.contains(code("black"), code("coffee")));
    REQUIRE(!m.contains(code("dark"), code("coffee")));
}

TEST_CASE("matrix of a union is the entrywise max") {
    mcres::Rng rng(42);
    Corpus corpus = testsupport::random_corpus(rng, 60);
    Vocabulary v = build_vocab(corpus);
    PhraseInventory p = build_phrase_inventory(corpus);
    std::vector<const Sample*> a, b;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        (i % 2 ? a : b).push_back(&corpus[i]);
    for (Level level : kAllLevels) {
        auto ma = build_matrix(a, level, v, p);
        auto mb = build_matrix(b, level, v, p);
        auto mu = build_matrix(corpus, level, v, p);
        std::set<std::uint64_t> expect(ma.entries.begin(), ma.entries.end());
        expect.insert(mb.entries.begin(), mb.entries.end());
        REQUIRE(std::set<std::uint64_t>(mu.entries.begin(), mu.entries.end()) == expect);
    }
}

TEST_CASE("novelty: the dark-coffee example") {
    Corpus corpus = two_word_corpus({"dark table", "black coffee", "dark coffee"});
    Vocabulary v = build_vocab(corpus);
    PhraseInventory p = build_phrase_inventory(corpus);
    std::vector<const Sample*> vtr{&corpus[0], &corpus[1]};
    std::vector<const Sample*> candi{&corpus[2]};

    auto m_vtr = build_matrix(vtr, Level::WW, v, p);
    auto m_candi = build_matrix(candi, Level::WW, v, p);
    auto novel = identify_novel(m_candi, m_vtr, component_inventory(vtr), Level::WW, v, p);
    REQUIRE(novel.size() == 1);
    REQUIRE(novel[0].left.key == "dark");
    REQUIRE(novel[0].right.key == "coffee");

    // identical matrices -> zero difference
    auto none = identify_novel(m_vtr, m_vtr, component_inventory(vtr), Level::WW, v, p);
    REQUIRE(none.empty());
}

TEST_CASE("novelty requires both components in the virtual training set") {
    Corpus corpus = two_word_corpus({"black coffee", "dark coffee"});
    Vocabulary v = build_vocab(corpus);
    PhraseInventory p = build_phrase_inventory(corpus);
    std::vector<const Sample*> vtr{&corpus[0]};
    std::vector<const Sample*> candi{&corpus[1]};
    auto novel = identify_novel(build_matrix(candi, Level::WW, v, p),
                                build_matrix(vtr, Level::WW, v, p), component_inventory(vtr),
                                Level::WW, v, p);
    REQUIRE(novel.empty());  // "dark" absent from D_vtr
}

TEST_CASE("dimension mismatch is rejected") {
    Corpus a = two_word_corpus({"dark table"});
    Corpus b = two_word_corpus({"dark table", "black coffee"});
    auto ma = build_matrix(a, Level::WW, build_vocab(a), build_phrase_inventory(a));
    auto mb = build_matrix(b, Level::WW, build_vocab(b), build_phrase_inventory(b));
    REQUIRE_THROWS_AS(identify_novel(ma, mb, ComponentInventory{}, Level::WW, build_vocab(b),
                                     build_phrase_inventory(b)),
                      DimensionMismatch);
}

TEST_CASE("matrix novelty equals the set-based oracle") {
    mcres::Rng rng(20250801);
    for (int round = 0; round < 40; ++round) {
        Corpus corpus = testsupport::random_corpus(rng, 30 + static_cast<int>(rng.below(90)));
        Vocabulary v = build_vocab(corpus);
        PhraseInventory p = build_phrase_inventory(corpus);
        std::size_t cut = 1 + rng.below(corpus.size() - 1);
        std::vector<const Sample*> vtr, candi;
        for (std::size_t i = 0; i < corpus.size(); ++i)
            (i < cut ? vtr : candi).push_back(&corpus[i]);
        for (Level level : kAllLevels) {
            auto got = identify_novel(build_matrix(candi, level, v, p),
                                      build_matrix(vtr, level, v, p), component_inventory(vtr),
                                      level, v, p);
            std::set<KeyPair> got_keys;
            for (const auto& c : got) got_keys.emplace(c.left.key, c.right.key);
            REQUIRE(got_keys == testsupport::naive_novel(vtr, candi, level));
        }
    }
}

TEST_CASE("construct_split sizes and degenerate cases") {
    mcres::Rng rng(11);
    Corpus corpus = testsupport::random_corpus(rng, 100);
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split = construct_split(idx, 0.6, 999);
    REQUIRE(split.vtr_ids.size() == 60);

    REQUIRE_THROWS_AS(construct_split(idx, 1.0, 1), DegenerateSplit);
    REQUIRE_THROWS_AS(construct_split(idx, 0.0, 1), DegenerateSplit);

    Corpus tiny;
    tiny.push_back(Sample::make("a", parse_bracketed("(NN dog)")));
    CorpusIndex tidx = build_corpus_index(tiny);
    REQUIRE_THROWS_AS(construct_split(tidx, 0.5, 1), DegenerateSplit);
}

TEST_CASE("corpus of bare words has empty testing sets at all levels") {
    Corpus corpus;
    for (int i = 0; i < 10; ++i)
        corpus.push_back(Sample::make("s" + std::to_string(i), parse_bracketed("(NN dog)")));
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split = construct_split(idx, 0.6, 5);
    for (Level l : kAllLevels) {
        REQUIRE(split.vte_ids[level_index(l)].empty());
        REQUIRE(split.level_empty[level_index(l)]);
    }
}

TEST_CASE("split soundness: independent re-derivation of the invariants") {
    mcres::Rng rng(77);
    for (int round = 0; round < 12; ++round) {
        Corpus corpus = testsupport::random_corpus(rng, 40 + static_cast<int>(rng.below(80)));
        CorpusIndex idx = build_corpus_index(corpus);
        VirtualSplit split = construct_split(idx, 0.5 + 0.2 * rng.uniform(), rng.next());

        std::set<std::string> vtr_ids(split.vtr_ids.begin(), split.vtr_ids.end());
        auto vtr = testsupport::select(corpus, split.vtr_ids);
        std::vector<const Sample*> candi;
        std::vector<std::string> candi_ids;
        for (const auto& s : corpus)
            if (!vtr_ids.count(s.id)) {
                candi.push_back(&s);
                candi_ids.push_back(s.id);
            }
        auto exist = testsupport::naive_existence(vtr);

        for (Level level : kAllLevels) {
            const int li = level_index(level);
            std::set<std::string> vte_ids(split.vte_ids[li].begin(), split.vte_ids[li].end());
            // disjointness
            for (const auto& id : vte_ids) REQUIRE(!vtr_ids.count(id));

            auto novel = testsupport::naive_novel(vtr, candi, level);
            for (std::size_t ci = 0; ci < candi.size(); ++ci) {
                const Sample& s = *candi[ci];
                std::set<KeyPair> hits;
                for (const auto& c : s.level_compositions(level)) {
                    KeyPair kp{c.left.key, c.right.key};
                    if (novel.count(kp)) hits.insert(kp);
                }
                // membership is exactly "has a level novelty"
                REQUIRE(vte_ids.count(s.id) == !hits.empty());
                if (!hits.empty()) {
                    const auto& ann = split.annotations.at(s.id)[li];
                    REQUIRE(std::set<KeyPair>(ann.begin(), ann.end()) == hits);
                    for (const auto& kp : ann) {
                        REQUIRE(testsupport::naive_component_exists(kp.first, exist));
                        REQUIRE(testsupport::naive_component_exists(kp.second, exist));
                    }
                }
            }
        }
    }
}

TEST_CASE("same seed reproduces the split, different seeds move it") {
    mcres::Rng rng(3);
    Corpus corpus = testsupport::random_corpus(rng, 80);
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit a = construct_split(idx, 0.6, 1234, 7);
    VirtualSplit b = construct_split(idx, 0.6, 1234, 7);
    REQUIRE(split_to_json(a).dump() == split_to_json(b).dump());

    VirtualSplit c = construct_split(idx, 0.6, 1235, 7);
    REQUIRE(split_to_json(a).dump() != split_to_json(c).dump());
}

TEST_CASE("manifest round-trips losslessly") {
    mcres::Rng rng(8);
    Corpus corpus = testsupport::random_corpus(rng, 60);
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split = construct_split(idx, 0.6, 42, 3);
    std::string bytes = split_to_json(split).dump();
    VirtualSplit back = split_from_json(nlohmann::ordered_json::parse(bytes));
    REQUIRE(split_to_json(back).dump() == bytes);
    REQUIRE(back.epoch == 3);
    REQUIRE(back.seed == 42);
}

TEST_CASE("curriculum thirds rule") {
    using L = Level;
    auto levels = [](int epoch, int total) { return curriculum_levels(epoch, total); };
    REQUIRE(levels(0, 9) == std::vector<L>{L::WW});
    REQUIRE(levels(2, 9) == std::vector<L>{L::WW});
    REQUIRE(levels(3, 9) == std::vector<L>{L::WW, L::WP});
    REQUIRE(levels(4, 9) == std::vector<L>{L::WW, L::WP});
    REQUIRE(levels(6, 9) == std::vector<L>{L::WW, L::WP, L::PP});
    REQUIRE(levels(0, 1) == std::vector<L>{L::WW});

    // nested and monotone for any epoch count
    for (int total = 1; total <= 20; ++total) {
        std::size_t prev = 1;
        for (int e = 0; e < total; ++e) {
            auto cur = levels(e, total);
            REQUIRE(cur.size() >= prev);
            prev = cur.size();
        }
    }
}

TEST_CASE("pair_batches covers novelty components") {
    // D_vtr: "dark table", "black coffee"; test sample "dark coffee"
    Corpus corpus = two_word_corpus({"dark table", "black coffee", "dark coffee"});
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split;
    split.vtr_ids = {"s0", "s1"};
    split.vte_ids[level_index(Level::WW)] = {"s2"};
    split.level_empty = {false, true, true};
    split.annotations["s2"][level_index(Level::WW)] = {{"dark", "coffee"}};

    PairedBatch batch = pair_batches(idx, split, {Level::WW}, 1, 2, 99);
    REQUIRE(batch.test_entries.size() == 1);
    REQUIRE(batch.test_entries[0].first == 2);
    std::set<int> train(batch.train_pos.begin(), batch.train_pos.end());
    REQUIRE(train == std::set<int>{0, 1});
}

TEST_CASE("single-sample cover then padding") {
    // one vtr sample holds both components (but not the composition)
    Corpus corpus;
    corpus.push_back(Sample::make("s0", parse_bracketed("(X (Y (A dark) (B big)) (C coffee))")));
    corpus.push_back(Sample::make("s1", parse_bracketed("(NP (JJ black) (NN table))")));
    corpus.push_back(Sample::make("s2", parse_bracketed("(NP (JJ dark) (NN coffee))")));
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split;
    split.vtr_ids = {"s0", "s1"};
    split.vte_ids[level_index(Level::WW)] = {"s2"};
    split.level_empty = {false, true, true};
    split.annotations["s2"][level_index(Level::WW)] = {{"dark", "coffee"}};

    PairedBatch b1 = pair_batches(idx, split, {Level::WW}, 1, 1, 5);
    REQUIRE(b1.train_pos == std::vector<int>{0});

    PairedBatch b2 = pair_batches(idx, split, {Level::WW}, 1, 2, 5);
    REQUIRE(b2.train_pos.size() == 2);  // padded with the remaining vtr sample
    REQUIRE(b2.train_pos[0] == 0);
    REQUIRE(b2.train_pos[1] == 1);
}

TEST_CASE("active levels restrict the test batch") {
    mcres::Rng rng(15);
    Corpus corpus = testsupport::random_corpus(rng, 120);
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split = construct_split(idx, 0.6, 4242);
    if (!split.level_usable(Level::WW)) return;  // extremely unlikely with this corpus
    PairedBatch batch = pair_batches(idx, split, {Level::WW}, 8, 8, 7);
    for (auto [pos, level] : batch.test_entries) REQUIRE(level == Level::WW);
}

TEST_CASE("pairing failure after retries") {
    Corpus corpus = two_word_corpus({"dark table", "black coffee", "dark coffee"});
    CorpusIndex idx = build_corpus_index(corpus);
    VirtualSplit split;
    split.vtr_ids = {"s0", "s1"};
    split.vte_ids[level_index(Level::WW)] = {"s2"};
    split.level_empty = {false, true, true};
    split.annotations["s2"][level_index(Level::WW)] = {{"dark", "coffee"}};
    // cover needs two samples but the budget is one
    REQUIRE_THROWS_AS(pair_batches(idx, split, {Level::WW}, 1, 1, 99), PairingFailed);
}

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mcres/errors.hpp"
#include "mcres/occurrence.hpp"
#include "mcres/rng.hpp"
#include "mcres/sample.hpp"
#include "mcres/vocab.hpp"

namespace mcres {

/// Corpus plus the derived index structures every split needs: vocabulary,
/// phrase inventory, id lookup and per-sample component inventories.
struct CorpusIndex {
    const Corpus* corpus = nullptr;
    Vocabulary vocab;
    PhraseInventory phrases;
    std::unordered_map<std::string, int> id_to_pos;
    std::vector<ComponentInventory> sample_inventories;

    const Sample& at(int pos) const { return (*corpus)[static_cast<std::size_t>(pos)]; }
    int size() const { return static_cast<int>(corpus->size()); }
};

inline CorpusIndex build_corpus_index(const Corpus& corpus) {
    if (corpus.empty()) throw EmptyCorpus();
    CorpusIndex idx;
    idx.corpus = &corpus;
    idx.vocab = build_vocab(corpus);
    idx.phrases = build_phrase_inventory(corpus);
    idx.sample_inventories.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        idx.id_to_pos[corpus[i].id] = static_cast<int>(i);
        std::vector<const Sample*> one{&corpus[i]};
        idx.sample_inventories.push_back(component_inventory(one));
    }
    if (idx.id_to_pos.size() != corpus.size()) throw Error("duplicate sample ids in corpus");
    return idx;
}

/// One epoch's virtual training set plus the K=3 virtual testing sets, with
/// per-sample annotations of the novel compositions that qualified each
/// testing sample.
struct VirtualSplit {
    int epoch = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> vtr_ids;
    std::array<std::vector<std::string>, 3> vte_ids;
    std::map<std::string, std::array<std::vector<KeyPair>, 3>> annotations;
    std::array<bool, 3> level_empty{false, false, false};  // NoNovelCompositions flags

    bool level_usable(Level l) const { return !level_empty[level_index(l)]; }
};

/// Splits the corpus into D_vtr (a uniform vtr_fraction subset) and, per
/// level, the virtual testing set of all remaining samples carrying at
/// least one level novelty w.r.t. D_vtr. An empty level is recorded in
/// `level_empty`, not fatal. Throws DegenerateSplit when either side of the
/// vtr/candidate partition would be empty.
inline VirtualSplit construct_split(const CorpusIndex& idx, double vtr_fraction,
                                    std::uint64_t seed, int epoch = 0) {
    const int n = idx.size();
    const long long vtr_size = std::llround(vtr_fraction * n);
    if (vtr_size <= 0 || vtr_size >= n)
        throw DegenerateSplit("vtr_fraction " + std::to_string(vtr_fraction) + " on " +
                              std::to_string(n) + " samples leaves an empty side");

    Rng rng(seed);
    std::vector<std::size_t> perm = rng.sample_indices(static_cast<std::size_t>(n),
                                                       static_cast<std::size_t>(n));
    std::vector<int> vtr_pos(perm.begin(), perm.begin() + vtr_size);
    std::vector<int> candi_pos(perm.begin() + vtr_size, perm.end());
    std::sort(vtr_pos.begin(), vtr_pos.end());
    std::sort(candi_pos.begin(), candi_pos.end());

    std::vector<const Sample*> vtr_ptrs, candi_ptrs;
    for (int p : vtr_pos) vtr_ptrs.push_back(&idx.at(p));
    for (int p : candi_pos) candi_ptrs.push_back(&idx.at(p));

    VirtualSplit split;
    split.epoch = epoch;
    split.seed = seed;
    for (const Sample* s : vtr_ptrs) split.vtr_ids.push_back(s->id);

    ComponentInventory vtr_inventory = component_inventory(vtr_ptrs);

    for (Level level : kAllLevels) {
        OccurrenceMatrix m_vtr = build_matrix(vtr_ptrs, level, idx.vocab, idx.phrases);
        OccurrenceMatrix m_candi = build_matrix(candi_ptrs, level, idx.vocab, idx.phrases);
        std::vector<Composition> novel =
            identify_novel(m_candi, m_vtr, vtr_inventory, level, idx.vocab, idx.phrases);

        std::unordered_set<std::string> novel_keys;
        for (const Composition& c : novel) novel_keys.insert(c.left.key + '\t' + c.right.key);

        const int li = level_index(level);
        for (const Sample* s : candi_ptrs) {
            std::vector<KeyPair> hits;
            for (const Composition& c : s->level_compositions(level))
                if (novel_keys.count(c.left.key + '\t' + c.right.key))
                    hits.emplace_back(c.left.key, c.right.key);
            if (!hits.empty()) {
                split.vte_ids[li].push_back(s->id);
                split.annotations[s->id][li] = std::move(hits);
            }
        }
        split.level_empty[li] = split.vte_ids[li].empty();
    }
    return split;
}

// -- curriculum --------------------------------------------------------------

/// Staged activation of composition levels over thirds of training.
struct CurriculumSchedule {
    int total_epochs = 1;
    int first_boundary() const { return (total_epochs + 2) / 3; }    // ceil(E/3)
    int second_boundary() const { return (2 * total_epochs + 2) / 3; }  // ceil(2E/3)
};

inline std::vector<Level> curriculum_levels(int epoch, int total_epochs) {
    CurriculumSchedule sched{total_epochs};
    if (epoch < sched.first_boundary()) return {Level::WW};
    if (epoch < sched.second_boundary()) return {Level::WW, Level::WP};
    return {Level::WW, Level::WP, Level::PP};
}

// -- batch pairing -----------------------------------------------------------

struct PairedBatch {
    std::vector<int> train_pos;                        // positions into corpus
    std::vector<std::pair<int, Level>> test_entries;   // position + level drawn for
    std::array<std::vector<int>, 3> test_pos_by_level() const {
        std::array<std::vector<int>, 3> out;
        for (auto [pos, level] : test_entries) out[level_index(level)].push_back(pos);
        return out;
    }
};

/// Without-replacement cursors over the virtual testing sets: batches draw
/// from a shuffled order per level and the order is reshuffled once
/// exhausted.
class TestPools {
public:
    TestPools(const CorpusIndex& idx, const VirtualSplit& split, std::uint64_t seed)
        : rng_(seed) {
        for (Level level : kAllLevels) {
            const int li = level_index(level);
            for (const std::string& id : split.vte_ids[li])
                order_[li].push_back(idx.id_to_pos.at(id));
            rng_.shuffle(order_[li]);
        }
    }

    /// k distinct sample positions from the level's pool (all of them when
    /// k exceeds the pool size).
    std::vector<int> draw(Level level, std::size_t k) {
        auto& order = order_[level_index(level)];
        auto& cur = cursor_[level_index(level)];
        std::vector<int> out;
        if (order.empty()) return out;
        k = std::min(k, order.size());
        std::unordered_set<int> seen;
        std::size_t guard = 0;
        while (out.size() < k && guard < 4 * order.size() + 8) {
            if (cur >= order.size()) {
                rng_.shuffle(order);
                cur = 0;
            }
            int pos = order[cur++];
            ++guard;
            if (seen.insert(pos).second) out.push_back(pos);
        }
        return out;
    }

private:
    std::array<std::vector<int>, 3> order_{};
    std::array<std::size_t, 3> cursor_{0, 0, 0};
    Rng rng_;
};

namespace detail {

struct CoverTarget {
    std::vector<std::string> words;    // uncovered word keys
    std::vector<std::string> phrases;  // uncovered phrase keys
};

inline CoverTarget cover_target(const CorpusIndex& idx, const VirtualSplit& split,
                                const std::vector<std::pair<int, Level>>& test_entries) {
    std::unordered_set<std::string> words, phrases;
    for (auto [pos, level] : test_entries) {
        const Sample& s = idx.at(pos);
        auto it = split.annotations.find(s.id);
        if (it == split.annotations.end()) continue;
        for (const KeyPair& kp : it->second[level_index(level)]) {
            for (const std::string& key : {kp.first, kp.second}) {
                if (key.find(' ') == std::string::npos)
                    words.insert(key);
                else
                    phrases.insert(key);
            }
        }
    }
    CoverTarget t;
    t.words.assign(words.begin(), words.end());
    t.phrases.assign(phrases.begin(), phrases.end());
    std::sort(t.words.begin(), t.words.end());
    std::sort(t.phrases.begin(), t.phrases.end());
    return t;
}

}  // namespace detail

/// Pairs one virtual-testing batch with a virtual-training batch. The test
/// batch takes near-equal shares from each active level's testing set; the
/// train batch is grown greedily from D_vtr until it contains every
/// component of every annotated novel composition in the test batch, then
/// padded with random D_vtr samples up to batch_size_tr. If the cover does
/// not fit, the test batch is resampled up to `retries` times before
/// PairingFailed.
inline PairedBatch pair_batches(const CorpusIndex& idx, const VirtualSplit& split,
                                const std::vector<Level>& active_levels,
                                std::size_t batch_size_te, std::size_t batch_size_tr,
                                std::uint64_t seed, TestPools* pools = nullptr,
                                int retries = 16) {
    std::vector<Level> levels;
    for (Level l : active_levels)
        if (split.level_usable(l)) levels.push_back(l);
    if (levels.empty()) throw PairingFailed("no active level has a usable testing set");

    Rng rng(seed);
    std::vector<int> vtr_pos;
    for (const std::string& id : split.vtr_ids) vtr_pos.push_back(idx.id_to_pos.at(id));

    std::optional<TestPools> local_pools;
    if (!pools) {
        local_pools.emplace(idx, split, rng.next());
        pools = &*local_pools;
    }

    for (int attempt = 0; attempt <= retries; ++attempt) {
        // near-equal shares, remainder to the lower levels first
        PairedBatch batch;
        const std::size_t base = batch_size_te / levels.size();
        std::size_t rem = batch_size_te % levels.size();
        for (Level l : levels) {
            std::size_t share = base + (rem > 0 ? 1 : 0);
            if (rem > 0) --rem;
            for (int pos : pools->draw(l, share)) batch.test_entries.emplace_back(pos, l);
        }
        if (batch.test_entries.empty()) continue;

        detail::CoverTarget target = detail::cover_target(idx, split, batch.test_entries);
        std::unordered_set<std::string> need_words(target.words.begin(), target.words.end());
        std::unordered_set<std::string> need_phrases(target.phrases.begin(),
                                                     target.phrases.end());
        std::unordered_set<int> chosen;

        while ((!need_words.empty() || !need_phrases.empty()) &&
               batch.train_pos.size() < batch_size_tr) {
            int best = -1;
            std::size_t best_cover = 0;
            for (int pos : vtr_pos) {
                if (chosen.count(pos)) continue;
                const ComponentInventory& inv =
                    idx.sample_inventories[static_cast<std::size_t>(pos)];
                std::size_t cover = 0;
                for (const std::string& w : need_words) cover += inv.has_word(w);
                for (const std::string& p : need_phrases) cover += inv.has_phrase(p);
                if (cover > best_cover) {
                    best_cover = cover;
                    best = pos;
                }
            }
            if (best < 0) break;  // nothing covers anything more
            chosen.insert(best);
            batch.train_pos.push_back(best);
            const ComponentInventory& inv = idx.sample_inventories[static_cast<std::size_t>(best)];
            for (auto it = need_words.begin(); it != need_words.end();)
                it = inv.has_word(*it) ? need_words.erase(it) : std::next(it);
            for (auto it = need_phrases.begin(); it != need_phrases.end();)
                it = inv.has_phrase(*it) ? need_phrases.erase(it) : std::next(it);
        }

        if (!need_words.empty() || !need_phrases.empty()) continue;  // resample test batch

        // pad with random distinct D_vtr samples
        if (batch.train_pos.size() < batch_size_tr) {
            std::vector<int> rest;
            for (int pos : vtr_pos)
                if (!chosen.count(pos)) rest.push_back(pos);
            rng.shuffle(rest);
            for (int pos : rest) {
                if (batch.train_pos.size() >= batch_size_tr) break;
                batch.train_pos.push_back(pos);
            }
        }
        return batch;
    }
    throw PairingFailed("could not cover test-batch novelties within " +
                        std::to_string(retries) + " retries");
}

}  // namespace mcres

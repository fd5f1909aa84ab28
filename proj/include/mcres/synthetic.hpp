#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "mcres/errors.hpp"
#include "mcres/grammar.hpp"
#include "mcres/novelty.hpp"
#include "mcres/rng.hpp"
#include "mcres/sample.hpp"
#include "mcres/scene.hpp"

namespace mcres {

inline const std::vector<std::string>& builtin_shapes() {
    static const std::vector<std::string> v{"circle", "square", "triangle", "star",
                                            "diamond", "cross",  "heart",    "ring"};
    return v;
}
inline const std::vector<std::string>& builtin_colors() {
    static const std::vector<std::string> v{"red",    "green", "blue",  "yellow", "purple",
                                            "orange", "pink",  "brown", "gray",   "cyan"};
    return v;
}

struct SyntheticConfig {
    int grid_h = 16;
    int grid_w = 16;
    int n_shapes = 6;
    int n_colors = 8;
    int n_train = 8000;
    int n_test = 2000;
    double holdout_fraction = 0.15;  // of the color-noun pair universe
    std::vector<std::string> relations = {"left", "right", "above", "below"};
    double p_relational = 0.35;       // chance an expression is NP REL NP
    double test_novel_fraction = 0.4; // test samples forced to carry a banned pair
    double zipf_exponent = 1.1;       // skew of the color-noun pair distribution

    std::vector<std::string> shapes() const {
        if (n_shapes < 1 || n_shapes > static_cast<int>(builtin_shapes().size()))
            throw std::invalid_argument("n_shapes out of range");
        return {builtin_shapes().begin(), builtin_shapes().begin() + n_shapes};
    }
    std::vector<std::string> colors() const {
        if (n_colors < 1 || n_colors > static_cast<int>(builtin_colors().size()))
            throw std::invalid_argument("n_colors out of range");
        return {builtin_colors().begin(), builtin_colors().begin() + n_colors};
    }

    SyntheticGrammar grammar() const {
        SyntheticGrammar g;
        g.nouns = shapes();
        g.attributes = colors();
        g.attributes.push_back("small");
        g.attributes.push_back("large");
        g.relation_heads = relations;
        g.index();
        return g;
    }

    FeatureLayout layout() const { return FeatureLayout{shapes(), colors()}; }
};

/// Composition keys excluded from training expressions but allowed in test
/// expressions. The generator guarantees every banned key's components still
/// occur in the training corpus.
struct HoldoutPlan {
    std::array<std::vector<KeyPair>, 3> banned;

    bool is_banned(Level l, const std::string& left, const std::string& right) const {
        for (const KeyPair& kp : banned[level_index(l)])
            if (kp.first == left && kp.second == right) return true;
        return false;
    }
    bool empty() const {
        return banned[0].empty() && banned[1].empty() && banned[2].empty();
    }
};

// -- expression semantics ------------------------------------------------------

struct NPSem {
    std::string noun;
    std::optional<std::string> color;
    std::optional<bool> large;  // size attribute, when mentioned

    void append_tokens(std::vector<std::string>& out) const {
        if (large) out.push_back(*large ? "large" : "small");
        if (color) out.push_back(*color);
        out.push_back(noun);
    }
};

struct ExprSem {
    NPSem np1;
    std::optional<std::string> rel;  // relation head; tail is always "of"
    NPSem np2;

    std::vector<std::string> tokens() const {
        std::vector<std::string> out;
        np1.append_tokens(out);
        if (rel) {
            out.push_back(*rel);
            out.push_back("of");
            np2.append_tokens(out);
        }
        return out;
    }
};

inline bool np_matches(const SceneObject& o, const NPSem& np) {
    if (o.shape != np.noun) return false;
    if (np.color && o.color != *np.color) return false;
    if (np.large && o.large != *np.large) return false;
    return true;
}

inline bool rel_holds(const SceneObject& a, const SceneObject& b, const std::string& rel) {
    if (rel == "left") return a.center2_c() < b.center2_c();
    if (rel == "right") return a.center2_c() > b.center2_c();
    if (rel == "above") return a.center2_r() < b.center2_r();
    if (rel == "below") return a.center2_r() > b.center2_r();
    throw Error("unknown relation: '" + rel + "'");
}

/// Objects denoted by the expression in the scene.
inline std::vector<int> denotation(const SceneSpec& scene, const ExprSem& sem) {
    std::vector<int> out;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const SceneObject& o = scene.objects[i];
        if (!np_matches(o, sem.np1)) continue;
        if (!sem.rel) {
            out.push_back(static_cast<int>(i));
            continue;
        }
        for (std::size_t j = 0; j < scene.objects.size(); ++j) {
            if (j == i) continue;
            if (np_matches(scene.objects[j], sem.np2) &&
                rel_holds(o, scene.objects[j], *sem.rel)) {
                out.push_back(static_cast<int>(i));
                break;
            }
        }
    }
    return out;
}

// -- generator -----------------------------------------------------------------

namespace detail {

/// Zipf-weighted sampler over an item list; ranks are a seeded permutation
/// so frequency is decoupled from lexical order.
class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double exponent, Rng& rng) {
        std::vector<std::size_t> ranks(n);
        for (std::size_t i = 0; i < n; ++i) ranks[i] = i;
        rng.shuffle(ranks);
        cum_.resize(n);
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            total += std::pow(static_cast<double>(ranks[i] + 1), -exponent);
            cum_[i] = total;
        }
        for (double& c : cum_) c /= total;
    }

    std::size_t draw(Rng& rng) const {
        double u = rng.uniform();
        return static_cast<std::size_t>(
            std::lower_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
    }

private:
    std::vector<double> cum_;
};

struct PairPool {
    std::vector<std::pair<int, int>> pairs;  // (color index, shape index)
    std::optional<ZipfSampler> sampler;
};

class Generator {
public:
    Generator(const SyntheticConfig& cfg, std::uint64_t seed)
        : cfg_(cfg),
          shapes_(cfg.shapes()),
          colors_(cfg.colors()),
          grammar_(cfg.grammar()),
          rng_(sub_seed(seed, "dataset")) {
        plan_ = pick_holdout(sub_seed(seed, "holdout"));
        build_pools();
    }

    HoldoutPlan plan() const { return plan_; }

    Corpus generate_train() {
        Corpus corpus;
        for (int i = 0; i < cfg_.n_train; ++i)
            corpus.push_back(make_sample("tr" + std::to_string(i), DrawMode::Train));
        return corpus;
    }

    Corpus generate_test(const Corpus& train) {
        CorpusCompositions train_cc = corpus_compositions(train);
        std::unordered_set<std::string> train_words(train_cc.inventory.words.begin(),
                                                    train_cc.inventory.words.end());
        Corpus corpus;
        for (int i = 0; i < cfg_.n_test; ++i) {
            const bool force_banned = !plan_.banned[0].empty() &&
                                      rng_.uniform() < cfg_.test_novel_fraction;
            Sample s = make_sample("te" + std::to_string(i),
                                   force_banned ? DrawMode::TestBanned : DrawMode::TestFree);
            // keep the test vocabulary inside the training vocabulary
            int guard = 0;
            while (!tokens_seen(s, train_words) && ++guard < 200)
                s = make_sample("te" + std::to_string(i),
                                force_banned ? DrawMode::TestBanned : DrawMode::TestFree);
            if (guard >= 200) throw Error("could not draw a test sample inside train vocabulary");
            s.novel = sample_is_novel(s, train_cc);
            corpus.push_back(std::move(s));
        }
        return corpus;
    }

    /// Banned components must all be present in the generated train corpus.
    static void check_holdout_components(const Corpus& train, const HoldoutPlan& plan) {
        std::unordered_set<std::string> words;
        for (const Sample& s : train) words.insert(s.tokens.begin(), s.tokens.end());
        for (const auto& kp : plan.banned[0])
            if (!words.count(kp.first) || !words.count(kp.second))
                throw InfeasibleHoldout("banned pair (" + kp.first + "," + kp.second +
                                        ") has a component unseen in training");
    }

private:
    enum class DrawMode { Train, TestFree, TestBanned };

    static bool tokens_seen(const Sample& s, const std::unordered_set<std::string>& words) {
        for (const auto& t : s.tokens)
            if (!words.count(t)) return false;
        return true;
    }

    HoldoutPlan pick_holdout(std::uint64_t seed) {
        HoldoutPlan plan;
        const std::size_t universe = colors_.size() * shapes_.size();
        const long long target = std::llround(cfg_.holdout_fraction * universe);
        if (target == 0) return plan;

        Rng rng(seed);
        std::vector<std::pair<int, int>> all;
        for (std::size_t c = 0; c < colors_.size(); ++c)
            for (std::size_t s = 0; s < shapes_.size(); ++s)
                all.emplace_back(static_cast<int>(c), static_cast<int>(s));
        rng.shuffle(all);

        std::vector<int> color_left(colors_.size(), static_cast<int>(shapes_.size()));
        std::vector<int> shape_left(shapes_.size(), static_cast<int>(colors_.size()));
        for (const auto& [c, s] : all) {
            if (static_cast<long long>(plan.banned[0].size()) >= target) break;
            if (color_left[c] <= 1 || shape_left[s] <= 1) continue;  // keep components reachable
            --color_left[c];
            --shape_left[s];
            plan.banned[0].emplace_back(colors_[c], shapes_[s]);
        }
        if (static_cast<long long>(plan.banned[0].size()) < target)
            throw InfeasibleHoldout("cannot ban " + std::to_string(target) +
                                    " pairs while keeping every component in training");
        std::sort(plan.banned[0].begin(), plan.banned[0].end());
        return plan;
    }

    void build_pools() {
        std::unordered_set<std::string> banned_keys;
        for (const auto& kp : plan_.banned[0]) banned_keys.insert(kp.first + '\t' + kp.second);
        for (std::size_t c = 0; c < colors_.size(); ++c)
            for (std::size_t s = 0; s < shapes_.size(); ++s) {
                if (banned_keys.count(colors_[c] + '\t' + shapes_[s])) continue;
                allowed_.pairs.emplace_back(static_cast<int>(c), static_cast<int>(s));
            }
        allowed_.sampler.emplace(allowed_.pairs.size(), cfg_.zipf_exponent, rng_);
    }

    NPSem draw_np(bool allow_bare, bool force_banned) {
        NPSem np;
        if (force_banned) {
            const auto& kp =
                plan_.banned[0][rng_.below(plan_.banned[0].size())];
            np.color = kp.first;
            np.noun = kp.second;
            if (rng_.uniform() < 0.3) np.large = rng_.below(2) == 1;
            return np;
        }
        double u = rng_.uniform();
        const double p_bare = allow_bare ? 0.18 : 0.0;
        if (u < p_bare) {
            np.noun = shapes_[rng_.below(shapes_.size())];
            return np;
        }
        u = (u - p_bare) / (1.0 - p_bare);
        if (u < 0.18) {  // size-only attribute
            np.noun = shapes_[rng_.below(shapes_.size())];
            np.large = rng_.below(2) == 1;
            return np;
        }
        const auto& [c, s] = allowed_.pairs[allowed_.sampler->draw(rng_)];
        np.color = colors_[static_cast<std::size_t>(c)];
        np.noun = shapes_[static_cast<std::size_t>(s)];
        if (u < 0.40) np.large = rng_.below(2) == 1;  // size + color
        return np;
    }

    ExprSem draw_expression(DrawMode mode) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            ExprSem sem;
            const bool relational = rng_.uniform() < cfg_.p_relational;
            const bool force_banned = mode == DrawMode::TestBanned;
            const bool banned_in_np2 = force_banned && relational && rng_.below(2) == 1;
            sem.np1 = draw_np(/*allow_bare=*/relational, force_banned && !banned_in_np2);
            if (relational) {
                sem.rel = cfg_.relations[rng_.below(cfg_.relations.size())];
                sem.np2 = draw_np(/*allow_bare=*/true, banned_in_np2);
                if (sem.np2.noun == sem.np1.noun) continue;
            }
            if (mode == DrawMode::Train && expression_banned(sem)) continue;
            return sem;
        }
        throw Error("could not draw an expression consistent with the holdout plan");
    }

    bool expression_banned(const ExprSem& sem) const {
        for (const NPSem* np : {&sem.np1, &sem.np2}) {
            if (np->color && plan_.is_banned(Level::WW, *np->color, np->noun)) return true;
            if (!sem.rel) break;
        }
        return false;
    }

    SceneObject random_object(const std::string& shape, const std::string& color, bool large) {
        SceneObject o;
        o.shape = shape;
        o.color = color;
        o.large = large;
        return o;
    }

    SceneObject realize_np(const NPSem& np) {
        return random_object(np.noun,
                             np.color ? *np.color : colors_[rng_.below(colors_.size())],
                             np.large ? *np.large : rng_.below(2) == 1);
    }

    /// Same noun, one mentioned attribute flipped.
    SceneObject attr_flip(const NPSem& np, const SceneObject& ref) {
        SceneObject o = ref;
        const bool flip_color = np.color && (!np.large || rng_.below(2) == 0);
        if (flip_color) {
            std::string other;
            do {
                other = colors_[rng_.below(colors_.size())];
            } while (other == ref.color);
            o.color = other;
        } else {
            o.large = !ref.large;
        }
        return o;
    }

    bool place(SceneSpec& scene, SceneObject& o,
               const std::function<bool(const SceneObject&)>& ok) {
        for (int attempt = 0; attempt < 80; ++attempt) {
            o.r = static_cast<int>(rng_.below(static_cast<std::uint64_t>(scene.h - o.extent() + 1)));
            o.c = static_cast<int>(rng_.below(static_cast<std::uint64_t>(scene.w - o.extent() + 1)));
            bool overlap = false;
            for (const SceneObject& other : scene.objects) {
                if (o.r < other.r + other.extent() && other.r < o.r + o.extent() &&
                    o.c < other.c + other.extent() && other.c < o.c + o.extent()) {
                    overlap = true;
                    break;
                }
            }
            if (overlap || !ok(o)) continue;
            scene.objects.push_back(o);
            return true;
        }
        return false;
    }

    std::optional<SceneSpec> build_scene(const ExprSem& sem) {
        SceneSpec scene;
        scene.h = cfg_.grid_h;
        scene.w = cfg_.grid_w;

        auto any = [](const SceneObject&) { return true; };

        if (!sem.rel) {
            SceneObject ref = realize_np(sem.np1);
            if (!place(scene, ref, any)) return std::nullopt;
            scene.referent = 0;
            SceneObject flip = attr_flip(sem.np1, scene.objects[0]);
            if (!place(scene, flip, any)) return std::nullopt;
            add_clutter(scene, {sem.np1.noun});
            return scene;
        }

        SceneObject landmark = realize_np(sem.np2);
        if (!place(scene, landmark, any)) return std::nullopt;
        const SceneObject lm = scene.objects[0];  // copy: objects reallocates below

        SceneObject ref = realize_np(sem.np1);
        if (!place(scene, ref,
                   [&](const SceneObject& o) { return rel_holds(o, lm, *sem.rel); }))
            return std::nullopt;
        scene.referent = 1;

        // an NP1 match on the wrong side of the landmark
        SceneObject wrong = scene.objects[1];
        if (!place(scene, wrong,
                   [&](const SceneObject& o) { return !rel_holds(o, lm, *sem.rel); }))
            return std::nullopt;

        if (sem.np1.color || sem.np1.large) {
            SceneObject flip = attr_flip(sem.np1, scene.objects[1]);
            if (!place(scene, flip, any)) return std::nullopt;
        }
        add_clutter(scene, {sem.np1.noun, sem.np2.noun});
        return scene;
    }

    void add_clutter(SceneSpec& scene, const std::vector<std::string>& avoid_shapes) {
        std::vector<std::string> pool;
        for (const auto& s : shapes_)
            if (std::find(avoid_shapes.begin(), avoid_shapes.end(), s) == avoid_shapes.end())
                pool.push_back(s);
        if (pool.empty()) return;
        const std::uint64_t n = rng_.below(3);  // 0..2 clutter objects
        for (std::uint64_t i = 0; i < n; ++i) {
            SceneObject o = random_object(pool[rng_.below(pool.size())],
                                          colors_[rng_.below(colors_.size())],
                                          rng_.below(2) == 1);
            SceneSpec copy = scene;
            auto any = [](const SceneObject&) { return true; };
            if (place(copy, o, any)) scene = std::move(copy);
        }
    }

    Sample make_sample(const std::string& id, DrawMode mode) {
        for (int attempt = 0; attempt < 400; ++attempt) {
            ExprSem sem = draw_expression(mode);
            std::optional<SceneSpec> scene = build_scene(sem);
            if (!scene) continue;
            std::vector<int> deno = denotation(*scene, sem);
            if (deno.size() != 1 || deno[0] != scene->referent) continue;

            Sample s = Sample::make(id, parse_synthetic(sem.tokens(), grammar_));
            s.mask = scene->footprint_mask(scene->referent);
            s.scene = std::move(*scene);
            return s;
        }
        throw Error("scene construction kept failing for sample " + id);
    }

    SyntheticConfig cfg_;
    std::vector<std::string> shapes_;
    std::vector<std::string> colors_;
    SyntheticGrammar grammar_;
    Rng rng_;
    HoldoutPlan plan_;
    PairPool allowed_;
};

}  // namespace detail

struct GeneratedDataset {
    Corpus train;
    Corpus test;
    HoldoutPlan plan;
};

/// Generates the full synthetic task: training corpus free of banned
/// compositions, test corpus with Novel/Non-novel labels w.r.t. the realized
/// training corpus, and the holdout plan itself.
inline GeneratedDataset generate_dataset(const SyntheticConfig& cfg, std::uint64_t seed) {
    if (cfg.n_train < 2 || cfg.n_test < 1)
        throw std::invalid_argument("n_train must be >= 2 and n_test >= 1");
    detail::Generator gen(cfg, seed);
    GeneratedDataset out;
    out.plan = gen.plan();
    out.train = gen.generate_train();
    detail::Generator::check_holdout_components(out.train, out.plan);
    out.test = gen.generate_test(out.train);
    return out;
}

}  // namespace mcres

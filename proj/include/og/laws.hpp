#pragma once

// Law suites over randomly generated composites: identity, associativity,
// interchange, the counit law, comonoid laws, lens factorization, and the
// observation-passthrough regression. Each suite reports the first
// counterexample with the seed that reproduces it.
//
// Games are compared behaviorally: equal boundaries, slot lists matched by
// leaf id, equal induced lenses profile-by-profile, and equal best-response
// membership on every finite context (continuation tables sampled once the
// exhaustive count passes the configured cap).

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "og/decisions.hpp"
#include "og/game.hpp"

namespace og::laws {

using Composer = std::function<OpenGame(const OpenGame&, const OpenGame&)>;

struct LawConfig {
    uint64_t seed = 0;
    int cases = 200;
    Composer composer = [](const OpenGame& g, const OpenGame& h) { return compose(g, h); };
    Limits limits;
};

struct LawReport {
    bool ok = true;
    int checked = 0;
    std::string counterexample;
    uint64_t fail_seed = 0;

    void fail(uint64_t seed, const std::string& what) {
        if (!ok) return;
        ok = false;
        fail_seed = seed;
        counterexample = what + " (seed " + std::to_string(seed) + ")";
    }
};

// --- slot matching by leaf id (the path segments added by compose/tensor
// --- are structural; the trailing segment identifies the atom) ---

inline std::string leaf_id(const std::string& slot_id) {
    auto pos = slot_id.rfind('/');
    return pos == std::string::npos ? slot_id : slot_id.substr(pos + 1);
}

inline std::optional<std::vector<size_t>> match_slots(const OpenGame& g1, const OpenGame& g2) {
    if (g1.slots().size() != g2.slots().size()) return std::nullopt;
    std::vector<size_t> perm(g1.slots().size());
    std::vector<bool> used(g2.slots().size(), false);
    for (size_t i = 0; i < g1.slots().size(); ++i) {
        std::string id = leaf_id(g1.slots()[i].id);
        bool found = false;
        for (size_t j = 0; j < g2.slots().size(); ++j) {
            if (used[j] || leaf_id(g2.slots()[j].id) != id) continue;
            if (!sets_equal(g1.slots()[i].obs, g2.slots()[j].obs) ||
                !sets_equal(g1.slots()[i].moves, g2.slots()[j].moves))
                return std::nullopt;
            perm[i] = j;
            used[j] = true;
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    return perm;
}

// --- behavioral game equality up to the canonical slot matching ---

inline std::optional<std::string> behavior_mismatch(const OpenGame& g1, const OpenGame& g2,
                                                    const Limits& lim = {}, uint64_t sample_seed = 1) {
    if (!(g1.dom() == g2.dom()) || !(g1.cod() == g2.cod()))
        return "boundaries differ: " + g1.dom().str() + "->" + g1.cod().str() + " vs " + g2.dom().str() +
               "->" + g2.cod().str();
    auto perm = match_slots(g1, g2);
    if (!perm) return "slot lists do not match";
    size_t n = g1.profile_count(lim);
    if (n != g2.profile_count(lim)) return "profile spaces differ";

    std::vector<StrategyProfile> p1(n), p2(n);
    std::vector<size_t> to2(n);
    for (size_t i = 0; i < n; ++i) {
        p1[i] = g1.nth_profile(i, lim);
        StrategyProfile q(g2.slots().size());
        for (size_t s = 0; s < q.size(); ++s) q[(*perm)[s]] = p1[i][s];
        to2[i] = g2.profile_index(q, lim);
        p2[i] = std::move(q);
    }
    for (size_t i = 0; i < n; ++i)
        if (!lens_equal(g1.lens_of(p1[i]), g2.lens_of(p2[i])))
            return "play/coplay tables differ at profile " + std::to_string(i);

    // contexts: every state, continuation tables exhaustive or sampled
    size_t nx = g1.dom().fwd->size();
    size_t nk_total = 1;
    bool exhaustive = true;
    {
        size_t base = g1.cod().bwd->size(), exp = g1.cod().fwd->size();
        for (size_t e = 0; e < exp; ++e) {
            if (base != 0 && nk_total > lim.context_exhaust_cap / std::max<size_t>(base, 1)) {
                exhaustive = false;
                break;
            }
            nk_total *= base;
        }
        if (nk_total > lim.context_exhaust_cap) exhaustive = false;
    }
    std::mt19937_64 rng(sample_seed);
    size_t nk = exhaustive ? nk_total : lim.context_samples;
    for (size_t x = 0; x < nx; ++x) {
        for (size_t kc = 0; kc < nk; ++kc) {
            std::vector<uint32_t> k(g1.cod().fwd->size());
            if (exhaustive) {
                size_t v = kc;
                for (size_t j = k.size(); j-- > 0;) {
                    k[j] = static_cast<uint32_t>(v % g1.cod().bwd->size());
                    v /= g1.cod().bwd->size();
                }
            } else {
                for (auto& e : k) e = static_cast<uint32_t>(rng() % g1.cod().bwd->size());
            }
            for (size_t a = 0; a < n; ++a) {
                auto l1 = g1.leaf_contexts(p1[a], x, k);
                auto l2 = g2.leaf_contexts(p2[a], x, k);
                for (size_t b = 0; b < n; ++b) {
                    bool m1 = OpenGame::member_from_leaves(l1, p1[b]);
                    bool m2 = OpenGame::member_from_leaves(l2, p2[b]);
                    if (m1 != m2) {
                        std::ostringstream os;
                        os << "best response differs at state " << x << ", profile pair (" << a << ","
                           << b << ")";
                        return os.str();
                    }
                }
            }
        }
    }
    return std::nullopt;
}

// --- random generator for small composites ---

class Gen {
public:
    explicit Gen(uint64_t seed) : rng_(seed) {}

    SetPtr base_set() {
        switch (rng_() % 3) {
        case 0: return FiniteSet::unit();
        case 1: return FiniteSet::atoms("P", {"p0", "p1"});
        default:
            return FiniteSet::values("N", {Value::num(0), Value::num(1)});
        }
    }

    SetPtr numeric_set() { return FiniteSet::values("N", {Value::num(0), Value::num(1)}); }

    Boundary boundary() { return Boundary(base_set(), base_set()); }

    TableFun table(const SetPtr& d, const SetPtr& c) {
        std::vector<uint32_t> t(d->size());
        for (auto& e : t) e = static_cast<uint32_t>(rng_() % c->size());
        return TableFun(d, c, t);
    }

    // an atom (or tiny composite) with the given domain boundary
    OpenGame with_dom(const Boundary& b, int depth, int& slots_left) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            switch (rng_() % 8) {
            case 0:
                return identity(b);
            case 1: { // lifted pair
                SetPtr z = base_set(), w = base_set();
                return lift(table(b.fwd, z), table(w, b.bwd));
            }
            case 2: // counit
                if (sets_equal(b.fwd, b.bwd) && !b.fwd->is_unit()) return counit(b.fwd);
                break;
            case 3: // decision
                if (b.bwd->is_unit() && slots_left > 0 && b.fwd->size() <= 2) {
                    SetPtr y = FiniteSet::atoms("P", {"p0", "p1"});
                    --slots_left;
                    return maximizing_decision(b.fwd, y, numeric_set(), fresh_id());
                }
                break;
            case 4: // copy / delete
                if (b.bwd->is_unit()) {
                    if (rng_() % 2 == 0 && b.fwd->size() <= 2) return copy_game(b.fwd);
                    return delete_game(b.fwd);
                }
                break;
            case 5: { // tensor across a factor split
                if (depth <= 0) break;
                auto ff = factor_list(b.fwd);
                auto bf = factor_list(b.bwd);
                size_t sf = rng_() % (ff.size() + 1);
                size_t sb = rng_() % (bf.size() + 1);
                Boundary left(from_factors(ff, 0, sf), from_factors(bf, 0, sb));
                Boundary right(from_factors(ff, sf, ff.size()), from_factors(bf, sb, bf.size()));
                OpenGame g1 = with_dom(left, depth - 1, slots_left);
                OpenGame g2 = with_dom(right, depth - 1, slots_left);
                return tensor(g1, g2);
            }
            case 6: { // short chain
                if (depth <= 0) break;
                OpenGame g = with_dom(b, depth - 1, slots_left);
                if (g.cod().fwd->size() > 4 || g.cod().bwd->size() > 4) return g;
                OpenGame h = with_dom(g.cod(), depth - 1, slots_left);
                return compose(g, h);
            }
            default:
                return identity(b);
            }
        }
        return identity(b);
    }

    OpenGame game(int depth, int max_slots) {
        int slots_left = max_slots;
        return with_dom(boundary(), depth, slots_left);
    }

    std::string fresh_id() { return "d" + std::to_string(counter_++); }

    uint64_t raw() { return rng_(); }

private:
    static std::vector<SetPtr> factor_list(const SetPtr& s) {
        if (s->is_unit()) return {};
        if (s->is_product()) return s->factors();
        return {s};
    }
    static SetPtr from_factors(const std::vector<SetPtr>& fs, size_t lo, size_t hi) {
        std::vector<SetPtr> part(fs.begin() + lo, fs.begin() + hi);
        if (part.empty()) return FiniteSet::unit();
        return product(part);
    }

    std::mt19937_64 rng_;
    int counter_ = 0;
};

// --- the suites ---

inline LawReport check_identity(const LawConfig& cfg) {
    LawReport rep;
    for (int c = 0; c < cfg.cases; ++c) {
        uint64_t seed = cfg.seed + static_cast<uint64_t>(c);
        Gen gen(seed);
        OpenGame g = gen.game(2, 3);
        OpenGame right = cfg.composer(g, identity(g.cod()));
        if (auto m = behavior_mismatch(right, g, cfg.limits, seed)) {
            rep.fail(seed, "right identity: " + *m);
            return rep;
        }
        OpenGame left = cfg.composer(identity(g.dom()), g);
        if (auto m = behavior_mismatch(left, g, cfg.limits, seed)) {
            rep.fail(seed, "left identity: " + *m);
            return rep;
        }
        ++rep.checked;
    }
    return rep;
}

inline LawReport check_assoc(const LawConfig& cfg) {
    LawReport rep;
    for (int c = 0; c < cfg.cases; ++c) {
        uint64_t seed = cfg.seed + static_cast<uint64_t>(c);
        Gen gen(seed);
        int slots_left = 3;
        OpenGame g = gen.with_dom(gen.boundary(), 1, slots_left);
        OpenGame h = gen.with_dom(g.cod(), 1, slots_left);
        OpenGame i = gen.with_dom(h.cod(), 1, slots_left);
        OpenGame lhs = cfg.composer(cfg.composer(g, h), i);
        OpenGame rhs = cfg.composer(g, cfg.composer(h, i));
        if (auto m = behavior_mismatch(lhs, rhs, cfg.limits, seed)) {
            rep.fail(seed, "associativity: " + *m);
            return rep;
        }
        ++rep.checked;
    }
    return rep;
}

inline LawReport check_interchange(const LawConfig& cfg) {
    LawReport rep;
    for (int c = 0; c < cfg.cases; ++c) {
        uint64_t seed = cfg.seed + static_cast<uint64_t>(c);
        Gen gen(seed);
        int slots_left = 3;
        OpenGame g = gen.with_dom(gen.boundary(), 1, slots_left);
        OpenGame h = gen.with_dom(g.cod(), 1, slots_left);
        OpenGame g2 = gen.with_dom(gen.boundary(), 1, slots_left);
        OpenGame h2 = gen.with_dom(g2.cod(), 1, slots_left);
        OpenGame lhs = cfg.composer(tensor(g, g2), tensor(h, h2));
        OpenGame rhs = tensor(cfg.composer(g, h), cfg.composer(g2, h2));
        if (auto m = behavior_mismatch(lhs, rhs, cfg.limits, seed)) {
            rep.fail(seed, "interchange: " + *m);
            return rep;
        }
        ++rep.checked;
    }
    return rep;
}

// Counit law, exhaustive for all f : X -> Y over sets of size <= max_size.
inline LawReport check_counit(const LawConfig& cfg, size_t max_size = 4) {
    LawReport rep;
    auto sized = [](const std::string& prefix, size_t n) {
        std::vector<std::string> labels;
        for (size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
        return FiniteSet::atoms(prefix, labels);
    };
    for (size_t nx = 1; nx <= max_size; ++nx)
        for (size_t ny = 1; ny <= max_size; ++ny) {
            SetPtr x = sized("x", nx), y = sized("y", ny);
            for (const auto& f : enumerate_functions(x, y)) {
                OpenGame lhs =
                    compose(tensor(lift(f), identity(Boundary(FiniteSet::unit(), y))), counit(y));
                OpenGame rhs =
                    compose(tensor(identity(Boundary(x, FiniteSet::unit())), lift_contra(f)), counit(x));
                bool ok = lhs.dom() == rhs.dom() && lhs.cod() == rhs.cod() && lhs.slots().empty() &&
                          rhs.slots().empty() && lens_equal(lhs.lens_of({}), rhs.lens_of({}));
                for (size_t xi = 0; ok && xi < nx; ++xi) {
                    std::vector<uint32_t> k{0};
                    ok = lhs.br_member_idx(xi, k, {}, {}) && rhs.br_member_idx(xi, k, {}, {});
                }
                if (!ok) {
                    rep.fail(function_index(f), "counit law fails for |X|=" + std::to_string(nx) +
                                                    ", |Y|=" + std::to_string(ny));
                    return rep;
                }
                ++rep.checked;
            }
        }
    return rep;
}

inline LawReport check_comonoid(const LawConfig& cfg, size_t max_size = 4) {
    LawReport rep;
    (void)cfg;
    for (size_t n = 1; n <= max_size; ++n) {
        std::vector<std::string> labels;
        for (size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
        SetPtr x = FiniteSet::atoms("x", labels);
        Boundary bx(x, FiniteSet::unit());
        OpenGame idx = identity(bx);
        OpenGame l = compose(copy_game(x), tensor(delete_game(x), idx));
        OpenGame r = compose(copy_game(x), tensor(idx, delete_game(x)));
        OpenGame al = compose(copy_game(x), tensor(copy_game(x), idx));
        OpenGame ar = compose(copy_game(x), tensor(idx, copy_game(x)));
        bool ok = lens_equal(l.lens_of({}), idx.lens_of({})) &&
                  lens_equal(r.lens_of({}), idx.lens_of({})) && lens_equal(al.lens_of({}), ar.lens_of({}));
        if (!ok) {
            rep.fail(n, "comonoid law fails for |X|=" + std::to_string(n));
            return rep;
        }
        ++rep.checked;
    }
    return rep;
}

// Lens factorization at every composite node of a game, every profile.
inline std::optional<std::string> lens_factorization_mismatch(const OpenGame& g, const Limits& lim = {}) {
    size_t n = g.profile_count(lim);
    const GameNode& root = g.root();
    if (root.kind == GameNode::Kind::Seq || root.kind == GameNode::Kind::Tensor) {
        OpenGame left(root.left), right(root.right);
        size_t nl = left.slots().size();
        for (size_t i = 0; i < n; ++i) {
            StrategyProfile p = g.nth_profile(i, lim);
            StrategyProfile pl(p.begin(), p.begin() + nl), pr(p.begin() + nl, p.end());
            Lens whole = g.lens_of(p);
            Lens parts = root.kind == GameNode::Kind::Seq
                             ? lens_compose(left.lens_of(pl), right.lens_of(pr))
                             : lens_tensor(left.lens_of(pl), right.lens_of(pr));
            if (!lens_equal(whole, parts))
                return "lens factorization fails at profile " + std::to_string(i);
        }
        if (auto m = lens_factorization_mismatch(left, lim)) return m;
        if (auto m = lens_factorization_mismatch(right, lim)) return m;
    } else {
        for (size_t i = 0; i < n; ++i) g.lens_of(g.nth_profile(i, lim)); // well-formedness
    }
    return std::nullopt;
}

inline LawReport check_lens_factor(const LawConfig& cfg) {
    LawReport rep;
    for (int c = 0; c < cfg.cases; ++c) {
        uint64_t seed = cfg.seed + static_cast<uint64_t>(c);
        Gen gen(seed);
        int slots_left = 3;
        OpenGame g = gen.with_dom(gen.boundary(), 1, slots_left);
        OpenGame h = gen.with_dom(g.cod(), 1, slots_left);
        OpenGame gh = cfg.composer(g, h);
        if (auto m = lens_factorization_mismatch(gh, cfg.limits)) {
            rep.fail(seed, *m);
            return rep;
        }
        ++rep.checked;
    }
    return rep;
}

// Observation-passthrough regression: the compositionally built game has
// strategy space X -> Y, play (x, sigma(x)), trivial coplay, and best
// response selecting argmax of the continuation's section at x. Exhaustive
// over |X| = |Y| = 2 and all continuations into {0..3}.
inline LawReport check_passthrough(const LawConfig& cfg) {
    LawReport rep;
    (void)cfg;
    SetPtr x = FiniteSet::atoms("X", {"x0", "x1"});
    SetPtr y = FiniteSet::atoms("Y", {"y0", "y1"});
    SetPtr u = FiniteSet::values("U", {Value::num(0), Value::num(1), Value::num(2), Value::num(3)});
    OpenGame d = passthrough_decision(x, y, u);
    if (d.slots().size() != 1 || d.profile_count() != 4) {
        rep.fail(0, "passthrough: wrong strategy space");
        return rep;
    }
    SetPtr xy = d.cod().fwd;
    for (size_t pn = 0; pn < 4; ++pn) {
        StrategyProfile p = d.nth_profile(pn);
        for (size_t xi = 0; xi < 2; ++xi) {
            size_t expect = combine_index(xi, p[0].tab[xi], x, y);
            if (d.play_idx(p, xi) != expect) {
                rep.fail(pn, "passthrough: play is not (x, sigma(x))");
                return rep;
            }
            if (d.coplay_idx(p, xi, 0) != 0) {
                rep.fail(pn, "passthrough: coplay is not trivial");
                return rep;
            }
        }
    }
    size_t nk = function_count(xy, u);
    for (size_t kn = 0; kn < nk; ++kn) {
        auto k = nth_function(xy, u, kn).tab;
        for (size_t xi = 0; xi < 2; ++xi) {
            // independent argmax over the section y -> k(x, y)
            Rat k0 = Value(u->element(k[combine_index(xi, 0, x, y)])).num_v();
            Rat k1 = Value(u->element(k[combine_index(xi, 1, x, y)])).num_v();
            Rat best = std::max(k0, k1);
            for (size_t a = 0; a < 4; ++a)
                for (size_t b = 0; b < 4; ++b) {
                    StrategyProfile pb = d.nth_profile(b);
                    bool expect = ((pb[0].tab[xi] == 0 ? k0 : k1) == best);
                    if (d.br_member_idx(xi, k, d.nth_profile(a), pb) != expect) {
                        rep.fail(kn, "passthrough: best response is not the argmax of the section");
                        return rep;
                    }
                }
            ++rep.checked;
        }
    }
    return rep;
}

} // namespace og::laws

#pragma once

// The open-game algebra. A game is a composition tree of atoms (decisions
// and strategically trivial lifted lenses) combined by sequential
// composition and monoidal product. Each strategy profile induces a lens
// (play = view, coplay = update), and the best-response relation relative
// to a context (state, continuation) is evaluated by structural recursion
// on the tree:
//
//   seq    (sigma,sigma') in B(x,k')  and  (tau,tau') in B(play(l,sigma,x), k)
//          where k'(y) = coplay(r, tau, y, k(play(r, tau, y)))
//   tensor componentwise, against the projected continuations
//          k1(y1) = pi1 k(y1, play(r,sigma2,x2)),  k2(y2) = pi2 k(play(l,sigma1,x1), y2)
//
// Strategy profiles are flat per-slot assignments, not nested tuples, so
// reassociated composites have literally the same profile space.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "og/finite.hpp"
#include "og/lens.hpp"
#include "og/selection.hpp"

namespace og {

struct Limits {
    size_t function_cap = 1000000;
    size_t profile_cap = 1000000;
    size_t pair_cap = 1000000;        // best-response materialization
    size_t bijection_cap = 8;         // profile-space size for equivalence search
    size_t context_exhaust_cap = 10000; // continuation tables enumerated exhaustively
    size_t context_samples = 256;     // sampled tables beyond that
};

struct StrategySlot {
    std::string id;
    SetPtr obs;
    SetPtr moves;
};

// One table per slot, in slot order.
using StrategyProfile = std::vector<TableFun>;

struct Context {
    Value state;
    TableFun continuation; // cod.fwd -> cod.bwd
};

struct GameNode;
using NodePtr = std::shared_ptr<const GameNode>;

struct GameNode {
    enum class Kind { Trivial, Decision, Seq, Tensor };
    enum class Tag { Other, Identity, Lift, Counit, Copy, Delete, Swap };

    Kind kind = Kind::Trivial;
    Tag tag = Tag::Other;
    Boundary dom, cod;
    size_t slot_count = 0;

    Lens lens; // Trivial

    SelectionFunction sel; // Decision
    std::string base_id;

    NodePtr left, right;    // Seq / Tensor
    bool drop_left = false; // mutation fixture for the law suites; see testing/mutants.hpp
};

namespace detail {

inline size_t play_idx(const GameNode& n, std::span<const TableFun> sigma, size_t x) {
    switch (n.kind) {
    case GameNode::Kind::Trivial:
        return n.lens.view_idx(x);
    case GameNode::Kind::Decision:
        return sigma[0].tab[x];
    case GameNode::Kind::Seq: {
        auto sl = sigma.first(n.left->slot_count);
        auto sr = sigma.subspan(n.left->slot_count);
        return play_idx(*n.right, sr, play_idx(*n.left, sl, x));
    }
    case GameNode::Kind::Tensor: {
        auto sl = sigma.first(n.left->slot_count);
        auto sr = sigma.subspan(n.left->slot_count);
        auto [x1, x2] = split_index(x, n.left->dom.fwd, n.right->dom.fwd);
        return combine_index(play_idx(*n.left, sl, x1), play_idx(*n.right, sr, x2), n.left->cod.fwd,
                             n.right->cod.fwd);
    }
    }
    throw Error("unreachable");
}

inline size_t coplay_idx(const GameNode& n, std::span<const TableFun> sigma, size_t x, size_t r) {
    switch (n.kind) {
    case GameNode::Kind::Trivial:
        return n.lens.update_idx(x, r);
    case GameNode::Kind::Decision:
        return 0; // coutility of a decision is trivial
    case GameNode::Kind::Seq: {
        auto sl = sigma.first(n.left->slot_count);
        auto sr = sigma.subspan(n.left->slot_count);
        size_t y = play_idx(*n.left, sl, x);
        return coplay_idx(*n.left, sl, x, coplay_idx(*n.right, sr, y, r));
    }
    case GameNode::Kind::Tensor: {
        auto sl = sigma.first(n.left->slot_count);
        auto sr = sigma.subspan(n.left->slot_count);
        auto [x1, x2] = split_index(x, n.left->dom.fwd, n.right->dom.fwd);
        auto [r1, r2] = split_index(r, n.left->cod.bwd, n.right->cod.bwd);
        return combine_index(coplay_idx(*n.left, sl, x1, r1), coplay_idx(*n.right, sr, x2, r2),
                             n.left->dom.bwd, n.right->dom.bwd);
    }
    }
    throw Error("unreachable");
}

// Continuation seen by the left constituent of a sequential composite:
// k'(y) = coplay(r, tau, y, k(play(r, tau, y))).
inline std::vector<uint32_t> left_continuation(const GameNode& n, std::span<const TableFun> sr,
                                               std::span<const uint32_t> k) {
    std::vector<uint32_t> k1(n.left->cod.fwd->size());
    for (size_t y = 0; y < k1.size(); ++y)
        k1[y] = static_cast<uint32_t>(coplay_idx(*n.right, sr, y, k[play_idx(*n.right, sr, y)]));
    return k1;
}

// Membership test by structural recursion; each constituent is consulted
// exactly once.
inline bool member_rec(const GameNode& n, std::span<const TableFun> sigma,
                       std::span<const TableFun> sigmap, size_t x, std::span<const uint32_t> k) {
    switch (n.kind) {
    case GameNode::Kind::Trivial:
        return true;
    case GameNode::Kind::Decision:
        // only the deviating strategy matters in a one-slot game
        return n.sel.selects(sigmap[0].tab[x], k);
    case GameNode::Kind::Seq: {
        size_t nl = n.left->slot_count;
        auto sl = sigma.first(nl), sr = sigma.subspan(nl);
        auto spl = sigmap.first(nl), spr = sigmap.subspan(nl);
        std::vector<uint32_t> k1 = left_continuation(n, sr, k);
        size_t y = play_idx(*n.left, sl, x);
        bool left_ok = n.drop_left || member_rec(*n.left, sl, spl, x, k1);
        return left_ok && member_rec(*n.right, sr, spr, y, k);
    }
    case GameNode::Kind::Tensor: {
        size_t nl = n.left->slot_count;
        auto sl = sigma.first(nl), sr = sigma.subspan(nl);
        auto spl = sigmap.first(nl), spr = sigmap.subspan(nl);
        auto [x1, x2] = split_index(x, n.left->dom.fwd, n.right->dom.fwd);
        size_t p1 = play_idx(*n.left, sl, x1);
        size_t p2 = play_idx(*n.right, sr, x2);
        std::vector<uint32_t> k1(n.left->cod.fwd->size()), k2(n.right->cod.fwd->size());
        for (size_t y1 = 0; y1 < k1.size(); ++y1) {
            size_t r = k[combine_index(y1, p2, n.left->cod.fwd, n.right->cod.fwd)];
            k1[y1] = static_cast<uint32_t>(split_index(r, n.left->cod.bwd, n.right->cod.bwd).first);
        }
        for (size_t y2 = 0; y2 < k2.size(); ++y2) {
            size_t r = k[combine_index(p1, y2, n.left->cod.fwd, n.right->cod.fwd)];
            k2[y2] = static_cast<uint32_t>(split_index(r, n.left->cod.bwd, n.right->cod.bwd).second);
        }
        return member_rec(*n.left, sl, spl, x1, k1) && member_rec(*n.right, sr, spr, x2, k2);
    }
    }
    throw Error("unreachable");
}

// The context each decision slot ends up facing, given the pre-deviation
// profile. Membership then factors into one check per slot, which is what
// the exhaustive enumerations use.
struct LeafContext {
    bool present = false; // absent only under the mutation fixture
    uint32_t state = 0;
    std::vector<bool> chosen;
};

inline void collect_leaves(const GameNode& n, std::span<const TableFun> sigma, size_t x,
                           std::span<const uint32_t> k, std::vector<LeafContext>& out, size_t base) {
    switch (n.kind) {
    case GameNode::Kind::Trivial:
        return;
    case GameNode::Kind::Decision: {
        out[base].present = true;
        out[base].state = static_cast<uint32_t>(x);
        out[base].chosen = n.sel.chosen(k);
        return;
    }
    case GameNode::Kind::Seq: {
        size_t nl = n.left->slot_count;
        auto sl = sigma.first(nl), sr = sigma.subspan(nl);
        if (!n.drop_left) {
            std::vector<uint32_t> k1 = left_continuation(n, sr, k);
            collect_leaves(*n.left, sl, x, k1, out, base);
        }
        collect_leaves(*n.right, sr, play_idx(*n.left, sl, x), k, out, base + nl);
        return;
    }
    case GameNode::Kind::Tensor: {
        size_t nl = n.left->slot_count;
        auto sl = sigma.first(nl), sr = sigma.subspan(nl);
        auto [x1, x2] = split_index(x, n.left->dom.fwd, n.right->dom.fwd);
        size_t p1 = play_idx(*n.left, sl, x1);
        size_t p2 = play_idx(*n.right, sr, x2);
        std::vector<uint32_t> k1(n.left->cod.fwd->size()), k2(n.right->cod.fwd->size());
        for (size_t y1 = 0; y1 < k1.size(); ++y1) {
            size_t r = k[combine_index(y1, p2, n.left->cod.fwd, n.right->cod.fwd)];
            k1[y1] = static_cast<uint32_t>(split_index(r, n.left->cod.bwd, n.right->cod.bwd).first);
        }
        for (size_t y2 = 0; y2 < k2.size(); ++y2) {
            size_t r = k[combine_index(p1, y2, n.left->cod.fwd, n.right->cod.fwd)];
            k2[y2] = static_cast<uint32_t>(split_index(r, n.left->cod.bwd, n.right->cod.bwd).second);
        }
        collect_leaves(*n.left, sl, x1, k1, out, base);
        collect_leaves(*n.right, sr, x2, k2, out, base + nl);
        return;
    }
    }
}

inline void collect_slots(const GameNode& n, const std::string& prefix, std::vector<StrategySlot>& slots,
                          std::vector<const GameNode*>& nodes) {
    switch (n.kind) {
    case GameNode::Kind::Trivial:
        return;
    case GameNode::Kind::Decision:
        slots.push_back(StrategySlot{prefix + n.base_id, n.dom.fwd, n.cod.fwd});
        nodes.push_back(&n);
        return;
    case GameNode::Kind::Seq:
    case GameNode::Kind::Tensor:
        collect_slots(*n.left, prefix + "l/", slots, nodes);
        collect_slots(*n.right, prefix + "r/", slots, nodes);
        return;
    }
}

} // namespace detail

class OpenGame {
public:
    explicit OpenGame(NodePtr root) : root_(std::move(root)) {
        detail::collect_slots(*root_, "", slots_, slot_nodes_);
        for (size_t i = 0; i < slots_.size(); ++i)
            for (size_t j = i + 1; j < slots_.size(); ++j)
                if (slots_[i].id == slots_[j].id)
                    throw Error("duplicate strategy slot id " + slots_[i].id);
    }

    const Boundary& dom() const { return root_->dom; }
    const Boundary& cod() const { return root_->cod; }
    const std::vector<StrategySlot>& slots() const { return slots_; }
    const GameNode& root() const { return *root_; }
    NodePtr root_ptr() const { return root_; }
    bool is_scalar() const { return dom().is_unit() && cod().is_unit(); }
    bool strategically_trivial() const { return slots_.empty(); }

    // --- profile space, canonical order: slot 0 most significant ---

    size_t slot_space(size_t i, const Limits& lim = {}) const {
        return function_count(slots_[i].obs, slots_[i].moves, lim.function_cap);
    }

    size_t profile_count(const Limits& lim = {}) const {
        size_t n = 1;
        for (size_t i = 0; i < slots_.size(); ++i) {
            size_t s = slot_space(i, lim);
            if (s != 0 && n > lim.profile_cap / s)
                throw EnumerationCapExceeded("profile space exceeds cap of " + std::to_string(lim.profile_cap));
            n *= s;
        }
        return n;
    }

    StrategyProfile nth_profile(size_t n, const Limits& lim = {}) const {
        StrategyProfile p(slots_.size());
        for (size_t i = slots_.size(); i-- > 0;) {
            size_t s = slot_space(i, lim);
            p[i] = nth_function(slots_[i].obs, slots_[i].moves, n % s);
            n /= s;
        }
        return p;
    }

    size_t profile_index(const StrategyProfile& p, const Limits& lim = {}) const {
        validate_profile(p);
        size_t n = 0;
        for (size_t i = 0; i < slots_.size(); ++i) n = n * slot_space(i, lim) + function_index(p[i]);
        return n;
    }

    void validate_profile(const StrategyProfile& p) const {
        if (p.size() != slots_.size())
            throw IncompleteProfile("profile has " + std::to_string(p.size()) + " tables, game has " +
                                    std::to_string(slots_.size()) + " slots");
        for (size_t i = 0; i < p.size(); ++i)
            if (!sets_equal(p[i].dom, slots_[i].obs) || !sets_equal(p[i].cod, slots_[i].moves))
                throw IncompleteProfile("profile table " + std::to_string(i) + " does not fit slot " +
                                        slots_[i].id);
    }

    // --- play / coplay ---

    size_t play_idx(std::span<const TableFun> sigma, size_t x) const {
        return detail::play_idx(*root_, sigma, x);
    }
    size_t coplay_idx(std::span<const TableFun> sigma, size_t x, size_t r) const {
        return detail::coplay_idx(*root_, sigma, x, r);
    }

    Value play(const StrategyProfile& sigma, const Value& x) const {
        validate_profile(sigma);
        size_t xi = dom().fwd->index_of_or_throw(x);
        return cod().fwd->element(play_idx(sigma, xi));
    }

    Value coplay(const StrategyProfile& sigma, const Value& x, const Value& r) const {
        validate_profile(sigma);
        size_t xi = dom().fwd->index_of_or_throw(x);
        size_t ri = cod().bwd->index_of_or_throw(r);
        return dom().bwd->element(coplay_idx(sigma, xi, ri));
    }

    // The lens induced by a profile.
    Lens lens_of(const StrategyProfile& sigma) const {
        validate_profile(sigma);
        size_t nx = dom().fwd->size(), nr = cod().bwd->size();
        std::vector<uint32_t> view(nx), update(nx * nr);
        for (size_t x = 0; x < nx; ++x) {
            view[x] = static_cast<uint32_t>(play_idx(sigma, x));
            for (size_t r = 0; r < nr; ++r)
                update[x * nr + r] = static_cast<uint32_t>(coplay_idx(sigma, x, r));
        }
        return make_lens(dom(), cod(), view, update);
    }

    // --- best response ---

    void validate_context(const Context& ctx) const {
        if (!dom().fwd->contains(ctx.state))
            throw ContextTypeError("context state " + to_label(ctx.state) + " is not in " + dom().fwd->name());
        if (!sets_equal(ctx.continuation.dom, cod().fwd) || !sets_equal(ctx.continuation.cod, cod().bwd))
            throw ContextTypeError("context continuation is not a table " + cod().fwd->name() + " -> " +
                                   cod().bwd->name());
    }

    bool br_member_idx(size_t x, std::span<const uint32_t> k, std::span<const TableFun> sigma,
                       std::span<const TableFun> sigmap) const {
        return detail::member_rec(*root_, sigma, sigmap, x, k);
    }

    bool br_member(const Context& ctx, const StrategyProfile& sigma, const StrategyProfile& sigmap) const {
        validate_context(ctx);
        validate_profile(sigma);
        validate_profile(sigmap);
        size_t x = dom().fwd->index_of_or_throw(ctx.state);
        return br_member_idx(x, ctx.continuation.tab, sigma, sigmap);
    }

    std::vector<detail::LeafContext> leaf_contexts(std::span<const TableFun> sigma, size_t x,
                                                   std::span<const uint32_t> k) const {
        std::vector<detail::LeafContext> out(slots_.size());
        detail::collect_leaves(*root_, sigma, x, k, out, 0);
        return out;
    }

    static bool member_from_leaves(const std::vector<detail::LeafContext>& leaves,
                                   std::span<const TableFun> sigmap) {
        for (size_t i = 0; i < leaves.size(); ++i) {
            if (!leaves[i].present) continue;
            if (!leaves[i].chosen[sigmap[i].tab[leaves[i].state]]) return false;
        }
        return true;
    }

    // Lazily evaluated relation over profile indices in canonical order.
    Relation best_response(const Context& ctx, const Limits& lim = {}) const {
        validate_context(ctx);
        Relation rel;
        rel.carrier = profile_count(lim);
        size_t x = dom().fwd->index_of_or_throw(ctx.state);
        std::vector<uint32_t> k = ctx.continuation.tab;
        OpenGame self = *this;
        Limits l = lim;
        rel.member = [self, x, k, l](size_t a, size_t b) {
            StrategyProfile sa = self.nth_profile(a, l), sb = self.nth_profile(b, l);
            return self.br_member_idx(x, k, sa, sb);
        };
        return rel;
    }

    // Scalar games only: { sigma : (sigma, sigma) in B(*, *) }.
    std::vector<StrategyProfile> equilibria(const Limits& lim = {}) const {
        if (!is_scalar()) throw NotScalar("equilibria requires a scalar game " + dom().str() + " -> " + cod().str());
        size_t n = profile_count(lim);
        std::vector<uint32_t> k{0};
        std::vector<StrategyProfile> out;
        for (size_t i = 0; i < n; ++i) {
            StrategyProfile s = nth_profile(i, lim);
            auto leaves = leaf_contexts(s, 0, k);
            if (member_from_leaves(leaves, s)) out.push_back(std::move(s));
        }
        return out;
    }

private:
    NodePtr root_;
    std::vector<StrategySlot> slots_;
    std::vector<const GameNode*> slot_nodes_;
};

// Full best-response table for one context, row-major over canonical profile
// indices: table[a * n + b] iff (a, b) in B.
inline std::vector<uint8_t> br_table(const OpenGame& g, size_t x, std::span<const uint32_t> k,
                                     const Limits& lim = {}) {
    size_t n = g.profile_count(lim);
    if (n != 0 && n > lim.pair_cap / n)
        throw EnumerationCapExceeded("best-response table over " + std::to_string(n) + "^2 pairs exceeds cap");
    std::vector<StrategyProfile> profiles;
    profiles.reserve(n);
    for (size_t i = 0; i < n; ++i) profiles.push_back(g.nth_profile(i, lim));
    std::vector<uint8_t> table(n * n);
    for (size_t a = 0; a < n; ++a) {
        auto leaves = g.leaf_contexts(profiles[a], x, k);
        for (size_t b = 0; b < n; ++b)
            table[a * n + b] = OpenGame::member_from_leaves(leaves, profiles[b]) ? 1 : 0;
    }
    return table;
}

inline std::vector<uint8_t> br_table(const OpenGame& g, const Context& ctx, const Limits& lim = {}) {
    g.validate_context(ctx);
    size_t x = g.dom().fwd->index_of_or_throw(ctx.state);
    return br_table(g, x, ctx.continuation.tab, lim);
}

// --- constructors ---

inline OpenGame trivial_game(Lens lens, GameNode::Tag tag = GameNode::Tag::Other) {
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Trivial;
    n->tag = tag;
    n->dom = lens.dom;
    n->cod = lens.cod;
    n->lens = std::move(lens);
    return OpenGame(std::move(n));
}

inline OpenGame identity(const Boundary& b) { return trivial_game(lens_identity(b), GameNode::Tag::Identity); }

// Strategically trivial lifted pair: play f forward, map utility back by g.
inline OpenGame lift(const TableFun& f, const TableFun& g) {
    Boundary dom(f.dom, g.cod), cod(f.cod, g.dom);
    size_t nr = cod.bwd->size();
    std::vector<uint32_t> update(dom.fwd->size() * nr);
    for (size_t x = 0; x < dom.fwd->size(); ++x)
        for (size_t r = 0; r < nr; ++r) update[x * nr + r] = g.tab[r];
    return trivial_game(make_lens(dom, cod, f.tab, update), GameNode::Tag::Lift);
}

// Covariant lifting (f, id_1) : (X,1) -> (Y,1).
inline OpenGame lift(const TableFun& f) { return lift(f, TableFun::identity(FiniteSet::unit())); }

// Contravariant lifting (id_1, g) : (1,Y) -> (1,X) for g : Y -> X... note the
// direction: g maps the incoming utility to the outgoing coutility.
inline OpenGame lift_contra(const TableFun& g) { return lift(TableFun::identity(FiniteSet::unit()), g); }

// The counit (X,X) -> (1,1): reflects a forward value back as coutility.
inline OpenGame counit(const SetPtr& X) {
    Boundary dom(X, X), cod = Boundary::unit();
    std::vector<uint32_t> view(X->size(), 0u), update(X->size());
    for (size_t x = 0; x < X->size(); ++x) update[x] = static_cast<uint32_t>(x);
    return trivial_game(make_lens(dom, cod, view, update), GameNode::Tag::Counit);
}

// Diagonal on X, with an identity pass on the given backward carrier.
inline OpenGame copy_game(const SetPtr& X, const SetPtr& bwd = FiniteSet::unit()) {
    SetPtr XX = tensor_set(X, X);
    std::vector<uint32_t> diag(X->size());
    for (size_t x = 0; x < X->size(); ++x)
        diag[x] = static_cast<uint32_t>(combine_index(x, x, X, X));
    auto g = lift(TableFun(X, XX, std::move(diag)), TableFun::identity(bwd));
    auto n = std::make_shared<GameNode>(g.root());
    n->tag = GameNode::Tag::Copy;
    return OpenGame(std::move(n));
}

inline OpenGame delete_game(const SetPtr& X, const SetPtr& bwd = FiniteSet::unit()) {
    auto g = lift(TableFun::constant(X, FiniteSet::unit(), 0), TableFun::identity(bwd));
    auto n = std::make_shared<GameNode>(g.root());
    n->tag = GameNode::Tag::Delete;
    return OpenGame(std::move(n));
}

// Forward wire crossing (A tensor B -> B tensor A) with an identity pass on
// the given backward carrier.
inline OpenGame swap_game(const SetPtr& A, const SetPtr& B, const SetPtr& bwd = FiniteSet::unit()) {
    SetPtr AB = tensor_set(A, B), BA = tensor_set(B, A);
    std::vector<uint32_t> view(AB->size());
    for (size_t a = 0; a < A->size(); ++a)
        for (size_t b = 0; b < B->size(); ++b)
            view[combine_index(a, b, A, B)] = static_cast<uint32_t>(combine_index(b, a, B, A));
    auto g = lift(TableFun(AB, BA, std::move(view)), TableFun::identity(bwd));
    auto n = std::make_shared<GameNode>(g.root());
    n->tag = GameNode::Tag::Swap;
    return OpenGame(std::move(n));
}

namespace detail {

inline OpenGame compose_impl(const OpenGame& g, const OpenGame& h, bool drop_left) {
    if (!(g.cod() == h.dom()))
        throw BoundaryMismatch("compose: " + g.cod().str() + " does not match " + h.dom().str());
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Seq;
    n->dom = g.dom();
    n->cod = h.cod();
    n->left = g.root_ptr();
    n->right = h.root_ptr();
    n->slot_count = g.slots().size() + h.slots().size();
    n->drop_left = drop_left;
    return OpenGame(std::move(n));
}

} // namespace detail

// Sequential composition, diagram order: play g, then h.
inline OpenGame compose(const OpenGame& g, const OpenGame& h) { return detail::compose_impl(g, h, false); }

// Simultaneous play side by side.
inline OpenGame tensor(const OpenGame& g1, const OpenGame& g2) {
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Tensor;
    n->dom = tensor_boundary(g1.dom(), g2.dom());
    n->cod = tensor_boundary(g1.cod(), g2.cod());
    n->left = g1.root_ptr();
    n->right = g2.root_ptr();
    n->slot_count = g1.slots().size() + g2.slots().size();
    return OpenGame(std::move(n));
}

// Close an open game (1,1) -> (Y,R) with an outcome table q : Y -> R by
// feeding q's value back through a counit.
inline OpenGame close(const OpenGame& g, const TableFun& q) {
    if (!sets_equal(q.dom, g.cod().fwd) || !sets_equal(q.cod, g.cod().bwd))
        throw BoundaryMismatch("close: q must be a table " + g.cod().fwd->name() + " -> " +
                               g.cod().bwd->name());
    SetPtr R = q.cod;
    OpenGame mid = tensor(lift(q), identity(Boundary(FiniteSet::unit(), R)));
    return compose(compose(g, mid), counit(R));
}

// --- equivalence: bijection of profile spaces commuting with play, coplay
// --- and best response on every finite context.

inline bool equivalent(const OpenGame& g1, const OpenGame& g2, const Limits& lim = {}) {
    if (!(g1.dom() == g2.dom()) || !(g1.cod() == g2.cod()))
        throw BoundaryMismatch("equivalence requires equal boundaries");
    size_t n = g1.profile_count(lim);
    if (n != g2.profile_count(lim)) return false;
    if (n > lim.bijection_cap)
        throw EnumerationCapExceeded("equivalence search over " + std::to_string(n) +
                                     " profiles exceeds cap of " + std::to_string(lim.bijection_cap));

    size_t nx = g1.dom().fwd->size();
    size_t nk = function_count(g1.cod().fwd, g1.cod().bwd, lim.context_exhaust_cap);

    std::vector<StrategyProfile> p1(n), p2(n);
    for (size_t i = 0; i < n; ++i) {
        p1[i] = g1.nth_profile(i, lim);
        p2[i] = g2.nth_profile(i, lim);
    }

    // play/coplay signature per profile
    auto signature = [](const OpenGame& g, const StrategyProfile& p) {
        Lens l = g.lens_of(p);
        std::vector<uint32_t> sig = l.view.tab;
        sig.insert(sig.end(), l.update.tab.begin(), l.update.tab.end());
        return sig;
    };
    std::vector<std::vector<uint32_t>> sig1(n), sig2(n);
    for (size_t i = 0; i < n; ++i) {
        sig1[i] = signature(g1, p1[i]);
        sig2[i] = signature(g2, p2[i]);
    }

    // all best-response tables, one per context
    std::vector<std::vector<uint8_t>> b1, b2;
    for (size_t x = 0; x < nx; ++x)
        for (size_t ki = 0; ki < nk; ++ki) {
            TableFun k = nth_function(g1.cod().fwd, g1.cod().bwd, ki);
            b1.push_back(br_table(g1, x, k.tab, lim));
            b2.push_back(br_table(g2, x, k.tab, lim));
        }

    // candidate images by signature
    std::vector<std::vector<size_t>> candidates(n);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (sig1[a] == sig2[b]) candidates[a].push_back(b);

    std::vector<size_t> image(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto consistent = [&](size_t a, size_t b) {
        for (size_t c = 0; c < b1.size(); ++c) {
            for (size_t o = 0; o < n; ++o) {
                if (image[o] == SIZE_MAX && o != a) continue;
                size_t io = (o == a) ? b : image[o];
                if (b1[c][a * n + o] != b2[c][b * n + io]) return false;
                if (b1[c][o * n + a] != b2[c][io * n + b]) return false;
            }
        }
        return true;
    };
    std::function<bool(size_t)> assign = [&](size_t a) -> bool {
        if (a == n) return true;
        for (size_t b : candidates[a]) {
            if (used[b] || !consistent(a, b)) continue;
            image[a] = b;
            used[b] = true;
            if (assign(a + 1)) return true;
            image[a] = SIZE_MAX;
            used[b] = false;
        }
        return false;
    };
    return assign(0);
}

} // namespace og

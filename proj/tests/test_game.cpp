#include <catch2/catch_amalgamated.hpp>

#include "og/decisions.hpp"
#include "og/game.hpp"

using namespace og;

namespace {

SetPtr moves() { return FiniteSet::atoms("M", {"C", "D"}); }
SetPtr util() { return FiniteSet::values("U", {Value::num(0), Value::num(1), Value::num(2), Value::num(3)}); }

// PD outcome table q : M*M -> U*U
TableFun pd_q() {
    auto m2 = product(moves(), moves());
    auto r2 = product(util(), util());
    auto v = [&](long long a, long long b) {
        return r2->index_of_or_throw(Value::tuple({Value::num(a), Value::num(b)}));
    };
    std::vector<uint32_t> tab{static_cast<uint32_t>(v(2, 2)), static_cast<uint32_t>(v(0, 3)),
                              static_cast<uint32_t>(v(3, 0)), static_cast<uint32_t>(v(1, 1))};
    return TableFun(m2, r2, tab);
}

OpenGame pd_game() { return close(tensor_of_decisions({moves(), moves()}, util()), pd_q()); }

Value atomM(const char* x) { return Value::atom("M", x); }

} // namespace

TEST_CASE("identity game: play and coplay pass through") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    OpenGame id = identity(Boundary(s, s));
    REQUIRE(id.slots().empty());
    REQUIRE(id.play({}, Value::atom("S", "A")) == Value::atom("S", "A"));
    REQUIRE(id.coplay({}, Value::atom("S", "A"), Value::atom("S", "B")) == Value::atom("S", "B"));
}

TEST_CASE("lifted functions are strategically trivial") {
    auto q = pd_q();
    OpenGame g = lift(q);
    REQUIRE(g.slots().empty());
    auto cd = Value::tuple({atomM("C"), atomM("D")});
    REQUIRE(g.play({}, cd) == Value::tuple({Value::num(0), Value::num(3)}));
    // every context accepts the unique (empty) profile
    Context ctx{cd, TableFun::constant(g.cod().fwd, g.cod().bwd, 0)};
    REQUIRE(g.br_member(ctx, {}, {}));
}

TEST_CASE("covariant and contravariant liftings") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    TableFun f(s, s, {1, 0});
    OpenGame cov = lift(f);
    REQUIRE(cov.dom() == Boundary(s, FiniteSet::unit()));
    REQUIRE(cov.cod() == Boundary(s, FiniteSet::unit()));
    OpenGame contra = lift_contra(f);
    REQUIRE(contra.dom() == Boundary(FiniteSet::unit(), s));
    REQUIRE(contra.cod() == Boundary(FiniteSet::unit(), s));
    REQUIRE(contra.coplay({}, Value::star(), Value::atom("S", "A")) == Value::atom("S", "B"));
}

TEST_CASE("lift of identities is the identity game") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    OpenGame a = lift(TableFun::identity(s), TableFun::identity(s));
    OpenGame b = identity(Boundary(s, s));
    REQUIRE(lens_equal(a.lens_of({}), b.lens_of({})));
}

TEST_CASE("counit reflects the forward value") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    OpenGame e = counit(s);
    REQUIRE(e.slots().empty());
    REQUIRE(e.play({}, Value::atom("S", "A")) == Value::star());
    REQUIRE(e.coplay({}, Value::atom("S", "A"), Value::star()) == Value::atom("S", "A"));
}

TEST_CASE("copy and delete") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    OpenGame c = copy_game(s);
    REQUIRE(c.play({}, Value::atom("S", "A")) ==
            Value::tuple({Value::atom("S", "A"), Value::atom("S", "A")}));
    OpenGame d = delete_game(s);
    REQUIRE(d.play({}, Value::atom("S", "B")) == Value::star());
}

TEST_CASE("comonoid laws hold literally") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    Boundary bs(s, FiniteSet::unit());
    // counitality: (delete tensor id) after copy = id
    OpenGame lhs = compose(copy_game(s), tensor(delete_game(s), identity(bs)));
    REQUIRE(lens_equal(lhs.lens_of({}), identity(bs).lens_of({})));
    OpenGame rhs = compose(copy_game(s), tensor(identity(bs), delete_game(s)));
    REQUIRE(lens_equal(rhs.lens_of({}), identity(bs).lens_of({})));
    // coassociativity
    OpenGame l3 = compose(copy_game(s), tensor(copy_game(s), identity(bs)));
    OpenGame r3 = compose(copy_game(s), tensor(identity(bs), copy_game(s)));
    REQUIRE(lens_equal(l3.lens_of({}), r3.lens_of({})));
}

TEST_CASE("counit law: covariant and contravariant closures are equal games") {
    auto x = FiniteSet::atoms("X", {"x1", "x2", "x3"});
    auto y = FiniteSet::atoms("Y", {"y1", "y2"});
    for (const auto& f : enumerate_functions(x, y)) {
        OpenGame lhs = compose(tensor(lift(f), identity(Boundary(FiniteSet::unit(), y))), counit(y));
        OpenGame rhs = compose(tensor(identity(Boundary(x, FiniteSet::unit())), lift_contra(f)), counit(x));
        REQUIRE(lhs.dom() == rhs.dom());
        REQUIRE(lhs.cod() == rhs.cod());
        REQUIRE(lhs.slots().empty());
        REQUIRE(rhs.slots().empty());
        REQUIRE(lens_equal(lhs.lens_of({}), rhs.lens_of({})));
        // coplay hands back f(x)
        REQUIRE(lhs.coplay({}, Value::atom("X", "x2"), Value::star()) == f.apply(Value::atom("X", "x2")));
    }
}

TEST_CASE("two-stage play composes contingent strategies") {
    // first mover chooses a in A after seeing x, second mover sees (x, a)
    auto x = FiniteSet::atoms("X", {"x1", "x2"});
    auto a = FiniteSet::atoms("A", {"a1", "a2"});
    auto b = FiniteSet::atoms("B", {"b1", "b2"});
    auto u = util();

    OpenGame first = passthrough_decision(x, a, u, "p1");
    auto xa = tensor_set(x, a);
    // keep (x,a) visible and let the second mover observe it
    OpenGame stage2 = compose(
        copy_game(xa),
        tensor(identity(Boundary(xa, FiniteSet::unit())), maximizing_decision(xa, b, u, "p2")));
    OpenGame g = compose(first, tensor(stage2, identity(Boundary(FiniteSet::unit(), u))));

    REQUIRE(g.slots().size() == 2);
    for (size_t n = 0; n < g.profile_count(); ++n) {
        StrategyProfile p = g.nth_profile(n);
        for (size_t xi = 0; xi < x->size(); ++xi) {
            size_t ai = p[0].tab[xi];
            size_t xai = combine_index(xi, ai, x, a);
            size_t bi = p[1].tab[xai];
            Value expected = Value::tuple({x->element(xi), a->element(ai), b->element(bi)});
            REQUIRE(g.play(p, x->element(xi)) == expected);
        }
    }
}

TEST_CASE("composition with the identity preserves behavior") {
    OpenGame t = tensor_of_decisions({moves(), moves()}, util());
    OpenGame ti = compose(t, identity(t.cod()));
    OpenGame it = compose(identity(t.dom()), t);
    REQUIRE(ti.profile_count() == t.profile_count());
    for (size_t n = 0; n < t.profile_count(); ++n) {
        StrategyProfile p = t.nth_profile(n), pi = ti.nth_profile(n), ip = it.nth_profile(n);
        REQUIRE(lens_equal(t.lens_of(p), ti.lens_of(pi)));
        REQUIRE(lens_equal(t.lens_of(p), it.lens_of(ip)));
    }
    // best response agrees on every context
    size_t nk = function_count(t.cod().fwd, t.cod().bwd);
    for (size_t ki = 0; ki < nk; ki += 37) {
        TableFun k = nth_function(t.cod().fwd, t.cod().bwd, ki);
        auto b0 = br_table(t, 0, k.tab);
        auto b1 = br_table(ti, 0, k.tab);
        auto b2 = br_table(it, 0, k.tab);
        REQUIRE(b0 == b1);
        REQUIRE(b0 == b2);
    }
}

TEST_CASE("prisoner's dilemma: constant best response to defection") {
    OpenGame pd = pd_game();
    REQUIRE(pd.is_scalar());
    REQUIRE(pd.profile_count() == 4);

    auto eq = pd.equilibria();
    REQUIRE(eq.size() == 1);
    REQUIRE(eq[0][0].apply(Value::star()) == atomM("D"));
    REQUIRE(eq[0][1].apply(Value::star()) == atomM("D"));

    // B(*,*) holds exactly when the deviating profile is (D,D): 16 pairs
    std::vector<uint32_t> k{0};
    auto table = br_table(pd, 0, k);
    size_t dd = pd.profile_count() - 1; // (D,D) is the last profile in canonical order
    for (size_t a = 0; a < 4; ++a)
        for (size_t b = 0; b < 4; ++b) REQUIRE(table[a * 4 + b] == (b == dd ? 1 : 0));
}

TEST_CASE("lazy best-response relation agrees with the leaf-context path") {
    OpenGame pd = pd_game();
    Context ctx{Value::star(), TableFun::identity(FiniteSet::unit())};
    Relation rel = pd.best_response(ctx);
    REQUIRE(rel.carrier == 4);
    auto table = br_table(pd, ctx);
    for (size_t a = 0; a < 4; ++a)
        for (size_t b = 0; b < 4; ++b) REQUIRE(rel.contains(a, b) == (table[a * 4 + b] == 1));
    rel.materialize();
    REQUIRE(rel.pairs->size() == 4);
}

TEST_CASE("tensor with the scalar identity changes nothing") {
    OpenGame t = tensor_of_decisions({moves()}, util());
    OpenGame tu = tensor(t, identity(Boundary::unit()));
    REQUIRE(tu.dom() == t.dom());
    REQUIRE(tu.cod() == t.cod());
    for (size_t n = 0; n < t.profile_count(); ++n)
        REQUIRE(lens_equal(t.lens_of(t.nth_profile(n)), tu.lens_of(tu.nth_profile(n))));
}

TEST_CASE("strategic triviality is preserved by compose and tensor") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    OpenGame a = lift(TableFun::identity(s));
    OpenGame b = copy_game(s);
    OpenGame c = compose(a, b);
    OpenGame d = tensor(c, delete_game(s));
    REQUIRE(c.slots().empty());
    REQUIRE(d.slots().empty());
    // all-true best response on all contexts
    size_t nk = function_count(d.cod().fwd, d.cod().bwd);
    for (size_t x = 0; x < d.dom().fwd->size(); ++x)
        for (size_t ki = 0; ki < nk; ++ki) {
            TableFun k = nth_function(d.cod().fwd, d.cod().bwd, ki);
            REQUIRE(d.br_member_idx(x, k.tab, {}, {}));
        }
}

TEST_CASE("lens factorization: composites agree with lens operations") {
    OpenGame t = tensor_of_decisions({moves(), moves()}, util());
    OpenGame g1 = maximizing_decision(FiniteSet::unit(), moves(), util(), "d1");
    OpenGame g2 = maximizing_decision(FiniteSet::unit(), moves(), util(), "d2");
    for (size_t n = 0; n < t.profile_count(); ++n) {
        StrategyProfile p = t.nth_profile(n);
        StrategyProfile p1{p[0]}, p2{p[1]};
        REQUIRE(lens_equal(t.lens_of(p), lens_tensor(g1.lens_of(p1), g2.lens_of(p2))));
    }
    OpenGame pd = pd_game();
    // pd = (t ; mid) ; counit as built by close(); check the seq factorization
    const GameNode& seq = pd.root();
    REQUIRE(seq.kind == GameNode::Kind::Seq);
    OpenGame left(seq.left), right(seq.right);
    for (size_t n = 0; n < pd.profile_count(); ++n) {
        StrategyProfile p = pd.nth_profile(n);
        StrategyProfile pl(p.begin(), p.begin() + left.slots().size());
        StrategyProfile pr(p.begin() + left.slots().size(), p.end());
        REQUIRE(lens_equal(pd.lens_of(p), lens_compose(left.lens_of(pl), right.lens_of(pr))));
    }
}

TEST_CASE("equilibria of the closed identity is the empty profile") {
    OpenGame g = compose(identity(Boundary::unit()), identity(Boundary::unit()));
    auto eq = g.equilibria();
    REQUIRE(eq.size() == 1);
    REQUIRE(eq[0].empty());
}

TEST_CASE("equilibria requires a scalar game") {
    OpenGame d = maximizing_decision(FiniteSet::unit(), moves(), util());
    REQUIRE_THROWS_AS(d.equilibria(), NotScalar);
}

TEST_CASE("boundary mismatch on composition") {
    auto s = FiniteSet::atoms("S", {"A", "B"});
    REQUIRE_THROWS_AS(compose(identity(Boundary(s, s)), identity(Boundary::unit())), BoundaryMismatch);
}

TEST_CASE("profile validation") {
    OpenGame pd = pd_game();
    REQUIRE_THROWS_AS(pd.play({}, Value::star()), IncompleteProfile);
    auto s = FiniteSet::atoms("S", {"A", "B"});
    StrategyProfile wrong{TableFun::identity(s), TableFun::identity(s)};
    REQUIRE_THROWS_AS(pd.play(wrong, Value::star()), IncompleteProfile);
    Context bad{Value::atom("S", "A"), TableFun::identity(FiniteSet::unit())};
    REQUIRE_THROWS_AS(pd.br_member(bad, pd.nth_profile(0), pd.nth_profile(0)), ContextTypeError);
}

TEST_CASE("games are equivalent to themselves") {
    OpenGame pd = pd_game();
    REQUIRE(equivalent(pd, pd));
}

TEST_CASE("prisoner's dilemma is equivalent to a one-player game with a dominant 4th choice") {
    OpenGame pd = pd_game();
    // 1 player, 4 choices, utility k(x) = x
    auto a4 = FiniteSet::values("A4", {Value::num(1), Value::num(2), Value::num(3), Value::num(4)});
    OpenGame d = maximizing_decision(FiniteSet::unit(), a4, a4, "p");
    OpenGame h = close(d, TableFun::identity(a4));
    REQUIRE(equivalent(pd, h));
    // and not equivalent to a game whose best response differs
    OpenGame fixd = decision(FiniteSet::unit(), a4, fix_selection(a4), "p");
    OpenGame h2 = close(fixd, TableFun::identity(a4));
    REQUIRE(!equivalent(pd, h2));
}

TEST_CASE("decisions with permuted move order are equivalent") {
    auto m1 = FiniteSet::atoms("M", {"C", "D"});
    auto m2 = FiniteSet::atoms("M", {"D", "C"});
    auto u = util();
    OpenGame g1 = close(maximizing_decision(FiniteSet::unit(), m1, u), TableFun(m1, u, {0, 3}));
    OpenGame g2 = close(maximizing_decision(FiniteSet::unit(), m2, u), TableFun(m2, u, {3, 0}));
    REQUIRE(equivalent(g1, g2));
}

TEST_CASE("equivalence respects the profile-space cap") {
    auto big = FiniteSet::atoms("B", {"a", "b", "c", "d"});
    OpenGame g = close(maximizing_decision(FiniteSet::unit(), big, util()),
                       TableFun::constant(big, util(), 0));
    Limits lim;
    lim.bijection_cap = 2;
    REQUIRE_THROWS_AS(equivalent(g, g, lim), EnumerationCapExceeded);
}

TEST_CASE("direct membership recursion agrees with leaf contexts everywhere") {
    OpenGame g = sequential_game({moves(), moves()}, util());
    OpenGame closed = close(g, pd_q());
    size_t n = closed.profile_count();
    std::vector<uint32_t> k{0};
    for (size_t a = 0; a < n; ++a) {
        StrategyProfile pa = closed.nth_profile(a);
        auto leaves = closed.leaf_contexts(pa, 0, k);
        for (size_t b = 0; b < n; ++b) {
            StrategyProfile pb = closed.nth_profile(b);
            REQUIRE(closed.br_member_idx(0, k, pa, pb) == OpenGame::member_from_leaves(leaves, pb));
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "og/decisions.hpp"

using namespace og;

namespace {

SetPtr ab() { return FiniteSet::atoms("X", {"A", "B"}); }
SetPtr util() { return FiniteSet::values("U", {Value::num(0), Value::num(1), Value::num(2), Value::num(3)}); }

} // namespace

TEST_CASE("argmax selection") {
    auto m = FiniteSet::atoms("M", {"C", "D"});
    auto u = util();
    auto amax = argmax_selection(m, u);
    REQUIRE(amax.chosen(std::vector<uint32_t>{0, 3}) == std::vector<bool>{false, true});
    REQUIRE(amax.chosen(std::vector<uint32_t>{1, 1}) == std::vector<bool>{true, true});
    // row player facing an opponent who defects: k = {C -> 0, D -> 1}
    REQUIRE(amax.chosen(std::vector<uint32_t>{0, 1}) == std::vector<bool>{false, true});
}

TEST_CASE("argmax on a component of tuple outcomes") {
    auto m = FiniteSet::atoms("M", {"C", "D"});
    auto r2 = product(util(), util());
    auto k = [&](long long a1, long long b1, long long a2, long long b2) {
        std::vector<uint32_t> t(2);
        t[0] = static_cast<uint32_t>(r2->index_of_or_throw(Value::tuple({Value::num(a1), Value::num(b1)})));
        t[1] = static_cast<uint32_t>(r2->index_of_or_throw(Value::tuple({Value::num(a2), Value::num(b2)})));
        return t;
    };
    auto a1 = argmax_selection(m, r2, 1);
    auto a2 = argmax_selection(m, r2, 2);
    REQUIRE(a1.chosen(k(0, 3, 1, 1)) == std::vector<bool>{false, true});
    REQUIRE(a2.chosen(k(0, 3, 1, 1)) == std::vector<bool>{true, false});
}

TEST_CASE("argmax rejects non-numeric outcomes") {
    auto m = FiniteSet::atoms("M", {"C", "D"});
    auto amax = argmax_selection(m, m);
    REQUIRE_THROWS_AS(amax.chosen(std::vector<uint32_t>{0, 1}), NonNumericOutcome);
}

TEST_CASE("fix selection") {
    auto x = ab();
    auto f = fix_selection(x);
    REQUIRE(f.chosen(std::vector<uint32_t>{0, 1}) == std::vector<bool>{true, true});   // identity
    REQUIRE(f.chosen(std::vector<uint32_t>{0, 0}) == std::vector<bool>{true, false});  // constant A
    REQUIRE(f.chosen(std::vector<uint32_t>{1, 0}) == std::vector<bool>{false, false}); // swap
}

TEST_CASE("antifix selection") {
    auto x = ab();
    auto f = antifix_selection(x);
    REQUIRE(f.chosen(std::vector<uint32_t>{0, 1}) == std::vector<bool>{false, false});
    REQUIRE(f.chosen(std::vector<uint32_t>{1, 0}) == std::vector<bool>{true, true});
    REQUIRE(f.chosen(std::vector<uint32_t>{0, 0}) == std::vector<bool>{false, true});
}

TEST_CASE("fix and antifix partition the choice set") {
    auto x = FiniteSet::atoms("X", {"A", "B", "C"});
    auto fx = fix_selection(x);
    auto ax = antifix_selection(x);
    for (size_t n = 0; n < function_count(x, x); ++n) {
        auto k = nth_function(x, x, n).tab;
        auto f = fx.chosen(k);
        auto a = ax.chosen(k);
        for (size_t y = 0; y < x->size(); ++y) REQUIRE(f[y] != a[y]);
    }
}

TEST_CASE("anti-fix on a singleton set selects nothing") {
    auto one = FiniteSet::atoms("Z", {"z"});
    auto a = antifix_selection(one);
    REQUIRE(a.chosen(std::vector<uint32_t>{0}) == std::vector<bool>{false});
    // an empty selection set empties the best response, it is not an error
    OpenGame d = decision(FiniteSet::unit(), one, antifix_selection(one));
    Context ctx{Value::star(), TableFun::identity(one)};
    REQUIRE(!d.br_member(ctx, d.nth_profile(0), d.nth_profile(0)));
    auto closed = close(d, TableFun::identity(one));
    REQUIRE(closed.equilibria().empty());
}

TEST_CASE("argmax is invariant under positive affine rescaling") {
    std::mt19937_64 rng(20240801);
    auto m = FiniteSet::atoms("M", {"C", "D", "E"});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rat> ks(3);
        for (auto& r : ks) r = Rat(static_cast<long long>(rng() % 19) - 9, 1 + static_cast<long long>(rng() % 3));
        Rat a(1 + static_cast<long long>(rng() % 5), 1 + static_cast<long long>(rng() % 3));
        Rat b(static_cast<long long>(rng() % 11) - 5, 1);
        std::vector<Value> base, scaled;
        for (const auto& r : ks) {
            base.push_back(Value::num(r));
            scaled.push_back(Value::num(a * r + b));
        }
        // carriers: the two value pools, deduplicated
        auto dedup = [](std::vector<Value> vs) {
            std::vector<Value> out;
            for (auto& v : vs)
                if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
            return out;
        };
        auto u1 = FiniteSet::values("U1", dedup(base));
        auto u2 = FiniteSet::values("U2", dedup(scaled));
        std::vector<uint32_t> k1(3), k2(3);
        for (size_t i = 0; i < 3; ++i) {
            k1[i] = static_cast<uint32_t>(u1->index_of_or_throw(base[i]));
            k2[i] = static_cast<uint32_t>(u2->index_of_or_throw(scaled[i]));
        }
        REQUIRE(argmax_selection(m, u1).chosen(k1) == argmax_selection(m, u2).chosen(k2));
    }
}

TEST_CASE("decision: best response reads only the deviating strategy at the observed state") {
    auto x = ab();
    auto m = FiniteSet::atoms("M", {"C", "D"});
    auto u = util();
    OpenGame d = maximizing_decision(x, m, u);
    size_t n = d.profile_count();
    size_t nk = function_count(m, u);
    for (size_t ki = 0; ki < nk; ki += 7) {
        auto k = nth_function(m, u, ki).tab;
        for (size_t xi = 0; xi < 2; ++xi)
            for (size_t bp = 0; bp < n; ++bp) {
                StrategyProfile sp = d.nth_profile(bp);
                bool first = d.br_member_idx(xi, k, d.nth_profile(0), sp);
                for (size_t ap = 1; ap < n; ++ap)
                    REQUIRE(d.br_member_idx(xi, k, d.nth_profile(ap), sp) == first);
                // membership depends only on sigma'(x)
                auto sel = argmax_selection(m, u).chosen(k);
                REQUIRE(first == sel[sp[0].tab[xi]]);
            }
    }
}

TEST_CASE("decision with fix against a swap continuation has empty best response") {
    auto x = ab();
    OpenGame d = decision(FiniteSet::unit(), x, fix_selection(x));
    TableFun swap(x, x, {1, 0});
    Context ctx{Value::star(), swap};
    for (size_t a = 0; a < d.profile_count(); ++a)
        for (size_t b = 0; b < d.profile_count(); ++b)
            REQUIRE(!d.br_member(ctx, d.nth_profile(a), d.nth_profile(b)));
}

TEST_CASE("custom table selections") {
    auto x = ab();
    // "choose A unless the continuation is constant B"
    std::map<std::vector<uint32_t>, std::vector<bool>> entries;
    for (size_t n = 0; n < function_count(x, x); ++n) {
        auto k = nth_function(x, x, n).tab;
        bool const_b = k[0] == 1 && k[1] == 1;
        entries[{k[0], k[1]}] = const_b ? std::vector<bool>{false, true} : std::vector<bool>{true, false};
    }
    auto sel = table_selection("stubborn", x, x, entries);
    REQUIRE(sel.chosen(std::vector<uint32_t>{0, 0}) == std::vector<bool>{true, false});
    REQUIRE(sel.chosen(std::vector<uint32_t>{1, 1}) == std::vector<bool>{false, true});
    // totality enforced
    entries.erase(entries.begin());
    REQUIRE_THROWS_AS(table_selection("partial", x, x, entries), Error);
}

TEST_CASE("observation-passthrough decision matches its defining components") {
    auto x = ab();
    auto y = FiniteSet::atoms("Y", {"A", "B"});
    auto u = util();
    OpenGame d = passthrough_decision(x, y, u);

    // one slot with strategies X -> Y
    REQUIRE(d.slots().size() == 1);
    REQUIRE(sets_equal(d.slots()[0].obs, x));
    REQUIRE(sets_equal(d.slots()[0].moves, y));
    REQUIRE(d.profile_count() == 4);

    // play (x, sigma(x)); coplay trivial
    StrategyProfile swap{TableFun(x, y, {1, 0})};
    REQUIRE(d.play(swap, Value::atom("X", "A")) ==
            Value::tuple({Value::atom("X", "A"), Value::atom("Y", "B")}));
    REQUIRE(d.coplay(swap, Value::atom("X", "A"), d.cod().bwd->element(2)) == Value::star());

    // B(x,k) iff sigma'(x) maximizes y -> k(x,y): coordination continuation
    auto xy = d.cod().fwd;
    std::vector<uint32_t> k(xy->size());
    for (size_t xi = 0; xi < x->size(); ++xi)
        for (size_t yi = 0; yi < y->size(); ++yi)
            k[combine_index(xi, yi, x, y)] = (xi == yi) ? 1 : 0;
    for (size_t xi = 0; xi < 2; ++xi)
        for (size_t b = 0; b < 4; ++b) {
            StrategyProfile sp = d.nth_profile(b);
            bool expected = sp[0].tab[xi] == xi; // diagonal maximizes
            REQUIRE(d.br_member_idx(xi, k, d.nth_profile(0), sp) == expected);
        }
}

TEST_CASE("sequential game: strategy spaces") {
    auto x = ab();
    auto y = FiniteSet::atoms("Y", {"l", "r"});
    auto u = util();

    OpenGame g1 = sequential_game({x}, u);
    REQUIRE(g1.slots().size() == 1);
    REQUIRE(g1.slots()[0].obs->is_unit());
    REQUIRE(g1.profile_count() == 2); // X^1

    OpenGame g2 = sequential_game({x, y}, u);
    REQUIRE(g2.slots().size() == 2);
    REQUIRE(sets_equal(g2.slots()[1].obs, x));
    REQUIRE(g2.profile_count() == 8); // 2 * 2^2

    // play runs course-of-values through the stages
    StrategyProfile p{TableFun(FiniteSet::unit(), x, {1}), TableFun(x, y, {1, 0})};
    REQUIRE(g2.play(p, Value::star()) ==
            Value::tuple({Value::atom("X", "B"), Value::atom("Y", "l")}));
}

TEST_CASE("decisions require a resolved outcome set") {
    auto x = ab();
    SelectionFunction unresolved;
    unresolved.kind = SelectionFunction::Kind::Argmax;
    unresolved.name = "argmax";
    unresolved.choices = x;
    REQUIRE_THROWS_AS(decision(FiniteSet::unit(), x, unresolved), Error);
}

#include <catch2/catch_amalgamated.hpp>

#include "og/laws.hpp"
#include "og/testing/mutants.hpp"

using namespace og;

TEST_CASE("identity law holds on random composites") {
    laws::LawConfig cfg;
    cfg.seed = 7;
    cfg.cases = 60;
    auto rep = laws::check_identity(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
    REQUIRE(rep.checked == 60);
}

TEST_CASE("associativity holds on random composites") {
    laws::LawConfig cfg;
    cfg.seed = 7;
    cfg.cases = 60;
    auto rep = laws::check_assoc(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("interchange holds on random composites") {
    laws::LawConfig cfg;
    cfg.seed = 7;
    cfg.cases = 60;
    auto rep = laws::check_interchange(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("counit law, exhaustive up to size 3 here") {
    laws::LawConfig cfg;
    auto rep = laws::check_counit(cfg, 3);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("comonoid laws") {
    laws::LawConfig cfg;
    auto rep = laws::check_comonoid(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("lens factorization on random composites") {
    laws::LawConfig cfg;
    cfg.seed = 11;
    cfg.cases = 40;
    auto rep = laws::check_lens_factor(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("observation passthrough regression") {
    laws::LawConfig cfg;
    auto rep = laws::check_passthrough(cfg);
    INFO(rep.counterexample);
    REQUIRE(rep.ok);
}

TEST_CASE("the broken compose fixture is caught by the identity suite") {
    laws::LawConfig cfg;
    cfg.seed = 3;
    cfg.cases = 40;
    cfg.composer = [](const OpenGame& g, const OpenGame& h) { return testing::broken_compose(g, h); };
    auto rep = laws::check_identity(cfg);
    REQUIRE(!rep.ok);
    REQUIRE(!rep.counterexample.empty());
}

TEST_CASE("slot matching is by leaf id across reassociation") {
    laws::Gen gen(5);
    int slots = 3;
    OpenGame g = gen.with_dom(Boundary::unit(), 1, slots);
    OpenGame h = gen.with_dom(g.cod(), 1, slots);
    OpenGame i = gen.with_dom(h.cod(), 1, slots);
    OpenGame lhs = compose(compose(g, h), i);
    OpenGame rhs = compose(g, compose(h, i));
    auto perm = laws::match_slots(lhs, rhs);
    REQUIRE(perm.has_value());
}

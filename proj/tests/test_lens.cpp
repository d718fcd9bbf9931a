#include <catch2/catch_amalgamated.hpp>

#include "og/lens.hpp"

using namespace og;

namespace {

SetPtr ab() { return FiniteSet::atoms("S", {"A", "B"}); }

std::vector<SetPtr> small_sets() {
    return {FiniteSet::unit(), FiniteSet::atoms("S2", {"A", "B"}),
            FiniteSet::atoms("S3", {"p", "q", "r"})};
}

// lenses between two boundaries, addressed by (view index, update index)
struct LensSpace {
    Boundary dom, cod;
    size_t views, updates;
    LensSpace(Boundary d, Boundary c)
        : dom(d), cod(c), views(function_count(d.fwd, c.fwd)),
          updates(function_count(product(d.fwd, c.bwd), d.bwd)) {}
    size_t size() const { return views * updates; }
    Lens nth(size_t i) const {
        return Lens(dom, cod, nth_function(dom.fwd, cod.fwd, i / updates),
                    nth_function(product(dom.fwd, cod.bwd), dom.bwd, i % updates));
    }
};

std::vector<Lens> all_lenses(const Boundary& dom, const Boundary& cod) {
    LensSpace sp(dom, cod);
    std::vector<Lens> out;
    out.reserve(sp.size());
    for (size_t i = 0; i < sp.size(); ++i) out.push_back(sp.nth(i));
    return out;
}

} // namespace

TEST_CASE("composition with identity lenses is the identity law") {
    Boundary b(ab(), FiniteSet::atoms("T", {"s", "t", "u"}));
    Lens id = lens_identity(b);
    for (const auto& l : all_lenses(Boundary(ab(), ab()), b)) {
        REQUIRE(lens_equal(lens_compose(l, id), l));
    }
    for (const auto& l : all_lenses(b, Boundary(ab(), ab()))) {
        REQUIRE(lens_equal(lens_compose(id, l), l));
    }
}

TEST_CASE("composite of a point with a lens forces the view") {
    auto s = ab();
    Lens p = point(s, Value::atom("S", "A"), s);
    for (const auto& h : all_lenses(Boundary(s, s), Boundary(s, s))) {
        Lens c = lens_compose(p, h);
        REQUIRE(c.view_of(Value::star()) == h.view_of(Value::atom("S", "A")));
    }
}

TEST_CASE("composition formulas against brute-force expansion") {
    // X = S = Y = R = {A,B}; g = (swap, (x,r) -> r), h = (id, (y,q) -> q)
    auto s = ab();
    Boundary b(s, s);
    std::vector<uint32_t> swap_tab{1, 0};
    std::vector<uint32_t> second{0, 1, 0, 1}; // (x,r) -> r
    Lens g = make_lens(b, b, swap_tab, second);
    Lens h = make_lens(b, b, {0, 1}, second);
    Lens c = lens_compose(g, h);

    // independent expansion of view(x) = h.view(g.view(x)) and
    // update(x,q) = g.update(x, h.update(g.view(x), q)) over all inputs
    for (size_t x = 0; x < 2; ++x) {
        REQUIRE(c.view_idx(x) == h.view_idx(g.view_idx(x)));
        REQUIRE(c.view_idx(x) == swap_tab[x]);
        for (size_t q = 0; q < 2; ++q) {
            REQUIRE(c.update_idx(x, q) == g.update_idx(x, h.update_idx(g.view_idx(x), q)));
            REQUIRE(c.update_idx(x, q) == q);
        }
    }
}

TEST_CASE("lens category laws on sets of size <= 3") {
    auto sets = small_sets();
    for (const auto& x : sets)
        for (const auto& y : sets) {
            Boundary a(x, y), b(y, x), c(x, x);
            // sample associativity across each hom-set's index space
            LensSpace gs(a, b), hs(b, c), is(c, a);
            auto stride = [](size_t n) { return std::max<size_t>(1, n / 6); };
            for (size_t i = 0; i < gs.size(); i += stride(gs.size()))
                for (size_t j = 0; j < hs.size(); j += stride(hs.size()))
                    for (size_t k = 0; k < is.size(); k += stride(is.size())) {
                        Lens g = gs.nth(i), h = hs.nth(j), l = is.nth(k);
                        Lens lhs = lens_compose(lens_compose(g, h), l);
                        Lens rhs = lens_compose(g, lens_compose(h, l));
                        REQUIRE(lens_equal(lhs, rhs));
                    }
        }
}

TEST_CASE("tensor of identities is the identity on the product boundary") {
    auto s2 = FiniteSet::atoms("S2", {"A", "B"});
    auto s3 = FiniteSet::atoms("S3", {"p", "q", "r"});
    Boundary b1(s2, s3), b2(s3, s2);
    Lens t = lens_tensor(lens_identity(b1), lens_identity(b2));
    REQUIRE(lens_equal(t, lens_identity(tensor_boundary(b1, b2))));
}

TEST_CASE("interchange of tensor and composition") {
    auto s2 = FiniteSet::atoms("S2", {"A", "B"});
    auto s3 = FiniteSet::atoms("S3", {"p", "q", "r"});
    Boundary a(s2, s2), b(s3, s2), c(s2, s3);
    LensSpace gs(a, b), hs(b, c);
    size_t checked = 0;
    for (size_t i = 0; i < gs.size(); i += 97)
        for (size_t j = 0; j < hs.size(); j += 131)
            for (size_t i2 = 0; i2 < gs.size(); i2 += 103)
                for (size_t j2 = 0; j2 < hs.size(); j2 += 127) {
                    Lens g = gs.nth(i), h = hs.nth(j), g2 = gs.nth(i2), h2 = hs.nth(j2);
                    Lens lhs = lens_tensor(lens_compose(g, h), lens_compose(g2, h2));
                    Lens rhs = lens_compose(lens_tensor(g, g2), lens_tensor(h, h2));
                    REQUIRE(lens_equal(lhs, rhs));
                    ++checked;
                }
    REQUIRE(checked > 0);
}

TEST_CASE("tensor with the unit identity is neutral") {
    auto s = ab();
    Boundary b(s, s);
    for (const auto& l : all_lenses(b, b)) {
        Lens t = lens_tensor(l, lens_identity(Boundary::unit()));
        REQUIRE(lens_equal(t, l));
        Lens t2 = lens_tensor(lens_identity(Boundary::unit()), l);
        REQUIRE(lens_equal(t2, l));
    }
}

TEST_CASE("points") {
    auto s = ab();
    Lens p = point(s, Value::atom("S", "A"), s);
    REQUIRE(p.view_of(Value::star()) == Value::atom("S", "A"));
    REQUIRE(p.update_of(Value::star(), Value::atom("S", "B")) == Value::star());

    auto m2 = product(s, s);
    auto cd = Value::tuple({Value::atom("S", "A"), Value::atom("S", "B")});
    Lens p2 = point(m2, cd, s);
    REQUIRE(p2.view_of(Value::star()) == cd);

    REQUIRE_THROWS_AS(point(s, Value::atom("S", "E"), s), DomainError);
}

TEST_CASE("copoints") {
    auto s = ab();
    auto m2 = product(s, s);
    auto r2 = FiniteSet::values("R2", {Value::tuple({Value::num(2), Value::num(2)}),
                                       Value::tuple({Value::num(0), Value::num(3)}),
                                       Value::tuple({Value::num(3), Value::num(0)}),
                                       Value::tuple({Value::num(1), Value::num(1)})});
    auto q = TableFun(m2, r2, {0, 1, 2, 3});
    Lens cp = copoint(q);
    auto cc = Value::tuple({Value::atom("S", "A"), Value::atom("S", "A")});
    // the utility handed back through the copoint is q's value
    REQUIRE(cp.update_of(cc, Value::star()) == Value::tuple({Value::num(2), Value::num(2)}));
    Lens chain = lens_compose(point(m2, cc, r2), cp);
    REQUIRE(chain.dom == Boundary::unit());
    REQUIRE(chain.cod == Boundary::unit());
    // only one lens (1,1) -> (1,1) exists
    REQUIRE(chain.view.tab == std::vector<uint32_t>{0});
    REQUIRE(chain.update.tab == std::vector<uint32_t>{0});

    Lens const_cp = copoint(TableFun::constant(s, s, 0));
    REQUIRE(const_cp.update_of(Value::atom("S", "B"), Value::star()) == Value::atom("S", "A"));
}

TEST_CASE("boundary mismatch is rejected") {
    auto s2 = FiniteSet::atoms("S2", {"A", "B"});
    auto s3 = FiniteSet::atoms("S3", {"p", "q", "r"});
    Lens a = lens_identity(Boundary(s2, s2));
    Lens b = lens_identity(Boundary(s3, s3));
    REQUIRE_THROWS_AS(lens_compose(a, b), BoundaryMismatch);
}

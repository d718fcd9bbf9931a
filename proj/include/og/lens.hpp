#pragma once

// Bidirectional lenses over finite carriers: a (view, update) pair of total
// tables between typed boundaries. Every strategy profile of a game induces
// one, and composition/tensor of games agree with the lens operations here.

#include <string>
#include <utility>
#include <vector>

#include "og/finite.hpp"

namespace og {

struct Boundary {
    SetPtr fwd; // covariant: observations / moves
    SetPtr bwd; // contravariant: utility / coutility

    Boundary() : fwd(FiniteSet::unit()), bwd(FiniteSet::unit()) {}
    Boundary(SetPtr f, SetPtr b) : fwd(std::move(f)), bwd(std::move(b)) {}

    static Boundary unit() { return Boundary(); }
    bool is_unit() const { return fwd->is_unit() && bwd->is_unit(); }
    bool operator==(const Boundary& o) const { return sets_equal(fwd, o.fwd) && sets_equal(bwd, o.bwd); }
    std::string str() const { return "(" + fwd->name() + "," + bwd->name() + ")"; }
};

inline Boundary tensor_boundary(const Boundary& a, const Boundary& b) {
    return Boundary(tensor_set(a.fwd, b.fwd), tensor_set(a.bwd, b.bwd));
}

struct Lens {
    Boundary dom, cod;
    TableFun view;   // dom.fwd -> cod.fwd
    TableFun update; // product(dom.fwd, cod.bwd) -> dom.bwd

    Lens() = default;
    Lens(Boundary d, Boundary c, TableFun v, TableFun u)
        : dom(std::move(d)), cod(std::move(c)), view(std::move(v)), update(std::move(u)) {
        if (!sets_equal(view.dom, dom.fwd) || !sets_equal(view.cod, cod.fwd))
            throw Error("lens view table does not match its boundaries");
        if (update.tab.size() != dom.fwd->size() * cod.bwd->size())
            throw Error("lens update table is not total on " + dom.fwd->name() + "x" + cod.bwd->name());
        if (!sets_equal(update.cod, dom.bwd))
            throw Error("lens update table does not land in " + dom.bwd->name());
    }

    size_t view_idx(size_t x) const { return view.tab[x]; }
    size_t update_idx(size_t x, size_t r) const { return update.tab[x * cod.bwd->size() + r]; }

    Value view_of(const Value& x) const { return view.apply(x); }
    Value update_of(const Value& x, const Value& r) const {
        size_t xi = dom.fwd->index_of_or_throw(x);
        size_t ri = cod.bwd->index_of_or_throw(r);
        return dom.bwd->element(update_idx(xi, ri));
    }
};

inline Lens make_lens(Boundary dom, Boundary cod, const std::vector<uint32_t>& view_tab,
                      const std::vector<uint32_t>& update_tab) {
    TableFun v(dom.fwd, cod.fwd, view_tab);
    TableFun u(product(dom.fwd, cod.bwd), dom.bwd, update_tab);
    return Lens(std::move(dom), std::move(cod), std::move(v), std::move(u));
}

inline Lens lens_identity(const Boundary& b) {
    std::vector<uint32_t> u(b.fwd->size() * b.bwd->size());
    for (size_t x = 0; x < b.fwd->size(); ++x)
        for (size_t s = 0; s < b.bwd->size(); ++s) u[x * b.bwd->size() + s] = static_cast<uint32_t>(s);
    return make_lens(b, b, TableFun::identity(b.fwd).tab, u);
}

inline Lens lens_compose(const Lens& g, const Lens& h) {
    if (!(g.cod == h.dom))
        throw BoundaryMismatch("lens composition: " + g.cod.str() + " vs " + h.dom.str());
    size_t nx = g.dom.fwd->size(), nq = h.cod.bwd->size();
    std::vector<uint32_t> view(nx), update(nx * nq);
    for (size_t x = 0; x < nx; ++x) {
        size_t y = g.view_idx(x);
        view[x] = static_cast<uint32_t>(h.view_idx(y));
        for (size_t q = 0; q < nq; ++q)
            update[x * nq + q] = static_cast<uint32_t>(g.update_idx(x, h.update_idx(y, q)));
    }
    return make_lens(g.dom, h.cod, view, update);
}

inline Lens lens_tensor(const Lens& l1, const Lens& l2) {
    Boundary dom = tensor_boundary(l1.dom, l2.dom);
    Boundary cod = tensor_boundary(l1.cod, l2.cod);
    size_t nx = dom.fwd->size(), nr = cod.bwd->size();
    std::vector<uint32_t> view(nx), update(nx * nr);
    for (size_t x = 0; x < nx; ++x) {
        auto [x1, x2] = split_index(x, l1.dom.fwd, l2.dom.fwd);
        view[x] = static_cast<uint32_t>(
            combine_index(l1.view_idx(x1), l2.view_idx(x2), l1.cod.fwd, l2.cod.fwd));
        for (size_t r = 0; r < nr; ++r) {
            auto [r1, r2] = split_index(r, l1.cod.bwd, l2.cod.bwd);
            update[x * nr + r] = static_cast<uint32_t>(
                combine_index(l1.update_idx(x1, r1), l2.update_idx(x2, r2), l1.dom.bwd, l2.dom.bwd));
        }
    }
    return make_lens(dom, cod, view, update);
}

// An element x : X as a lens (1,1) -> (X,S).
inline Lens point(const SetPtr& X, const Value& x, const SetPtr& S) {
    auto i = X->index_of(x);
    if (!i) throw DomainError(to_label(x) + " is not an element of " + X->name());
    Boundary unit_b = Boundary::unit();
    std::vector<uint32_t> view{static_cast<uint32_t>(*i)};
    std::vector<uint32_t> update(S->size(), 0u);
    return make_lens(unit_b, Boundary(X, S), view, update);
}

// A function k : Y -> R as a lens (Y,R) -> (1,1).
inline Lens copoint(const TableFun& k) {
    Boundary dom(k.dom, k.cod);
    size_t ny = k.dom->size();
    std::vector<uint32_t> view(ny, 0u);
    std::vector<uint32_t> update(ny);
    for (size_t y = 0; y < ny; ++y) update[y] = k.tab[y];
    return make_lens(dom, Boundary::unit(), view, update);
}

inline bool lens_equal(const Lens& a, const Lens& b) {
    return a.dom == b.dom && a.cod == b.cod && a.view.tab == b.view.tab && a.update.tab == b.update.tab;
}

} // namespace og

#pragma once

// Finite enumerated value spaces, exact rational outcomes, and total
// functions represented as lookup tables. Everything downstream (lenses,
// games, the oracle, the DSL) is built on these types.
//
// Elements of a set are addressed by index; the index order is the
// declaration order and is canonical everywhere (enumeration, reports,
// golden tests). Product sets are flat: the factor list of a product of
// products is the concatenation of the factor lists, so reassociated
// products are literally the same set.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "og/error.hpp"

namespace og {

using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

// ---------------------------------------------------------------------------
// Value: an atom of a named set, an exact rational, or a tuple.

struct Value;

struct AtomV {
    std::string set;
    std::string el;
    bool operator==(const AtomV& o) const { return set == o.set && el == o.el; }
};

struct Value {
    std::variant<AtomV, Rat, std::vector<Value>> v;

    Value() : v(AtomV{"1", "*"}) {}
    Value(AtomV a) : v(std::move(a)) {}
    Value(Rat r) : v(r) {}
    Value(std::vector<Value> t) : v(std::move(t)) {}

    static Value atom(std::string set, std::string el) { return Value(AtomV{std::move(set), std::move(el)}); }
    static Value num(Rat r) { return Value(r); }
    static Value num(long long n, long long d = 1) { return Value(Rat(n, d)); }
    static Value tuple(std::vector<Value> t) { return Value(std::move(t)); }
    static Value star() { return Value(AtomV{"1", "*"}); }

    bool is_atom() const { return std::holds_alternative<AtomV>(v); }
    bool is_num() const { return std::holds_alternative<Rat>(v); }
    bool is_tuple() const { return std::holds_alternative<std::vector<Value>>(v); }
    bool is_star() const { return is_atom() && std::get<AtomV>(v).el == "*" && std::get<AtomV>(v).set == "1"; }

    const AtomV& atom_v() const { return std::get<AtomV>(v); }
    const Rat& num_v() const { return std::get<Rat>(v); }
    const std::vector<Value>& tuple_v() const { return std::get<std::vector<Value>>(v); }

    bool operator==(const Value& o) const { return v == o.v; }
};

inline std::string to_label(const Value& x) {
    if (x.is_atom()) return x.atom_v().el;
    if (x.is_num()) return to_string(x.num_v());
    std::string s = "(";
    const auto& t = x.tuple_v();
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += to_label(t[i]);
    }
    return s + ")";
}

// Strictified view of a value: nested tuples are flattened and unit atoms
// dropped, so e.g. ((a,*),b) and (a,(b)) both read as (a,b). Used when
// comparing games across reassociated or unit-padded boundaries.
inline void canon_collect(const Value& x, std::vector<Value>& out) {
    if (x.is_star()) return;
    if (x.is_tuple()) {
        for (const auto& c : x.tuple_v()) canon_collect(c, out);
        return;
    }
    out.push_back(x);
}

inline Value canon(const Value& x) {
    std::vector<Value> parts;
    canon_collect(x, parts);
    if (parts.empty()) return Value::star();
    if (parts.size() == 1) return parts[0];
    return Value::tuple(std::move(parts));
}

// Component of a numeric outcome, 1-based. A bare rational counts as its
// own first component, so selecting component 1 of a scalar is the scalar.
inline Rat numeric_component(const Value& x, std::optional<int> component) {
    if (x.is_num()) {
        if (!component || *component == 1) return x.num_v();
        throw NonNumericOutcome("outcome " + to_label(x) + " has no component " + std::to_string(*component));
    }
    if (x.is_tuple() && component) {
        const auto& t = x.tuple_v();
        if (*component >= 1 && static_cast<size_t>(*component) <= t.size() && t[*component - 1].is_num())
            return t[*component - 1].num_v();
    }
    throw NonNumericOutcome("outcome " + to_label(x) + " is not numeric" +
                            (component ? " at component " + std::to_string(*component) : ""));
}

// ---------------------------------------------------------------------------
// FiniteSet

class FiniteSet;
using SetPtr = std::shared_ptr<const FiniteSet>;

class FiniteSet {
public:
    // Base set of atoms with string labels.
    static SetPtr atoms(std::string name, std::vector<std::string> labels) {
        std::vector<Value> els;
        els.reserve(labels.size());
        for (auto& l : labels) els.push_back(Value::atom(name, std::move(l)));
        return values(std::move(name), std::move(els));
    }

    // Base set of arbitrary values (rationals, tuples of rationals, ...).
    static SetPtr values(std::string name, std::vector<Value> els) {
        for (size_t i = 0; i < els.size(); ++i)
            for (size_t j = i + 1; j < els.size(); ++j)
                if (els[i] == els[j])
                    throw Error("set " + name + ": duplicate element " + to_label(els[i]));
        auto s = std::shared_ptr<FiniteSet>(new FiniteSet());
        s->name_ = std::move(name);
        s->elems_ = std::move(els);
        s->size_ = s->elems_.size();
        return s;
    }

    static SetPtr unit() {
        static SetPtr u = values("1", {Value::star()});
        return u;
    }

    const std::string& name() const { return name_; }
    size_t size() const { return size_; }
    bool is_unit() const { return factors_.empty() && size_ == 1 && name_ == "1"; }
    bool is_product() const { return !factors_.empty(); }
    const std::vector<SetPtr>& factors() const { return factors_; }

    Value element(size_t i) const {
        if (i >= size_) throw DomainError("element index " + std::to_string(i) + " out of range for " + name_);
        if (factors_.empty()) return elems_[i];
        std::vector<Value> parts(factors_.size());
        for (size_t j = factors_.size(); j-- > 0;) {
            size_t n = factors_[j]->size();
            parts[j] = factors_[j]->element(i % n);
            i /= n;
        }
        return Value::tuple(std::move(parts));
    }

    std::optional<size_t> index_of(const Value& x) const {
        if (factors_.empty()) {
            for (size_t i = 0; i < elems_.size(); ++i)
                if (elems_[i] == x) return i;
            return std::nullopt;
        }
        if (!x.is_tuple() || x.tuple_v().size() != factors_.size()) return std::nullopt;
        size_t idx = 0;
        for (size_t j = 0; j < factors_.size(); ++j) {
            auto sub = factors_[j]->index_of(x.tuple_v()[j]);
            if (!sub) return std::nullopt;
            idx = idx * factors_[j]->size() + *sub;
        }
        return idx;
    }

    bool contains(const Value& x) const { return index_of(x).has_value(); }

    size_t index_of_or_throw(const Value& x) const {
        auto i = index_of(x);
        if (!i) throw DomainError(to_label(x) + " is not an element of " + name_);
        return *i;
    }

private:
    FiniteSet() = default;
    friend SetPtr product(const std::vector<SetPtr>& sets);

    std::string name_;
    std::vector<Value> elems_;   // base sets only
    std::vector<SetPtr> factors_; // product sets only
    size_t size_ = 0;
};

// Structural equality: same shape, same names, same element sequences.
inline bool sets_equal(const SetPtr& a, const SetPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->name() != b->name() || a->size() != b->size()) return false;
    if (a->is_product() != b->is_product()) return false;
    if (a->is_product()) {
        if (a->factors().size() != b->factors().size()) return false;
        for (size_t i = 0; i < a->factors().size(); ++i)
            if (!sets_equal(a->factors()[i], b->factors()[i])) return false;
        return true;
    }
    for (size_t i = 0; i < a->size(); ++i)
        if (!(a->element(i) == b->element(i))) return false;
    return true;
}

// Cartesian product with lexicographic element order. Factor lists are
// flattened, so product(product(A,B),C) and product(A,product(B,C)) are the
// same set. Explicit unit factors are kept: product(A,1) has elements (a,*).
inline SetPtr product(const std::vector<SetPtr>& sets) {
    std::vector<SetPtr> factors;
    for (const auto& s : sets) {
        if (!s) throw Error("product: null set");
        if (s->is_product())
            factors.insert(factors.end(), s->factors().begin(), s->factors().end());
        else
            factors.push_back(s);
    }
    if (factors.empty()) return FiniteSet::unit();
    if (factors.size() == 1) return factors[0];
    auto s = std::shared_ptr<FiniteSet>(new FiniteSet());
    size_t n = 1;
    std::string name;
    for (size_t i = 0; i < factors.size(); ++i) {
        n *= factors[i]->size();
        if (i) name += "*";
        name += factors[i]->name();
    }
    s->name_ = std::move(name);
    s->factors_ = std::move(factors);
    s->size_ = n;
    return s;
}

inline SetPtr product(SetPtr a, SetPtr b) { return product(std::vector<SetPtr>{std::move(a), std::move(b)}); }

// Monoidal product on carriers: like product, but the unit is strictly
// neutral. This is what boundaries of composite games are built with.
inline SetPtr tensor_set(const SetPtr& a, const SetPtr& b) {
    if (a->is_unit()) return b;
    if (b->is_unit()) return a;
    return product(a, b);
}

// Index arithmetic for tensor_set(a, b): elements are ordered a-major.
inline std::pair<size_t, size_t> split_index(size_t i, const SetPtr& a, const SetPtr& b) {
    if (a->is_unit()) return {0, i};
    if (b->is_unit()) return {i, 0};
    return {i / b->size(), i % b->size()};
}

inline size_t combine_index(size_t ia, size_t ib, const SetPtr& a, const SetPtr& b) {
    if (a->is_unit()) return ib;
    if (b->is_unit()) return ia;
    return ia * b->size() + ib;
}

// ---------------------------------------------------------------------------
// TableFun: a total function as an index table.

struct TableFun {
    SetPtr dom, cod;
    std::vector<uint32_t> tab; // tab[i] = index in cod of the image of dom element i

    TableFun() = default;
    TableFun(SetPtr d, SetPtr c, std::vector<uint32_t> t) : dom(std::move(d)), cod(std::move(c)), tab(std::move(t)) {
        if (tab.size() != dom->size()) throw Error("table for " + dom->name() + " is not total");
        for (uint32_t y : tab)
            if (y >= cod->size()) throw Error("table entry out of range for " + cod->name());
    }

    size_t operator()(size_t i) const { return tab[i]; }

    Value apply(const Value& x) const {
        auto i = dom->index_of(x);
        if (!i) throw DomainError(to_label(x) + " is not in the domain " + dom->name());
        return cod->element(tab[*i]);
    }

    static TableFun identity(const SetPtr& s) {
        std::vector<uint32_t> t(s->size());
        std::iota(t.begin(), t.end(), 0u);
        return TableFun(s, s, std::move(t));
    }

    static TableFun constant(const SetPtr& d, const SetPtr& c, size_t val) {
        return TableFun(d, c, std::vector<uint32_t>(d->size(), static_cast<uint32_t>(val)));
    }

    static TableFun from_pairs(const SetPtr& d, const SetPtr& c,
                               const std::vector<std::pair<Value, Value>>& entries) {
        std::vector<std::optional<uint32_t>> t(d->size());
        for (const auto& [x, y] : entries) {
            auto i = d->index_of(x);
            if (!i) throw DomainError(to_label(x) + " is not in the domain " + d->name());
            auto j = c->index_of(y);
            if (!j) throw DomainError(to_label(y) + " is not in the codomain " + c->name());
            if (t[*i]) throw Error("duplicate table entry for " + to_label(x));
            t[*i] = static_cast<uint32_t>(*j);
        }
        std::vector<uint32_t> tt(d->size());
        for (size_t i = 0; i < t.size(); ++i) {
            if (!t[i]) throw Error("table is not total: missing entry for " + to_label(d->element(i)));
            tt[i] = *t[i];
        }
        return TableFun(d, c, std::move(tt));
    }

    bool operator==(const TableFun& o) const {
        return sets_equal(dom, o.dom) && sets_equal(cod, o.cod) && tab == o.tab;
    }
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration of total functions X -> Y, odometer order: the
// digit of the last domain element spins fastest.

inline size_t checked_pow(size_t base, size_t exp, size_t cap, const std::string& what) {
    size_t n = 1;
    for (size_t i = 0; i < exp; ++i) {
        if (base != 0 && n > cap / base) throw EnumerationCapExceeded(what + " exceeds cap of " + std::to_string(cap));
        n *= base;
        if (n > cap) throw EnumerationCapExceeded(what + " exceeds cap of " + std::to_string(cap));
    }
    return n;
}

constexpr size_t kDefaultFunctionCap = 1000000;

inline size_t function_count(const SetPtr& x, const SetPtr& y, size_t cap = kDefaultFunctionCap) {
    return checked_pow(y->size(), x->size(), cap, "|" + y->name() + "|^|" + x->name() + "|");
}

inline TableFun nth_function(const SetPtr& x, const SetPtr& y, size_t n) {
    std::vector<uint32_t> t(x->size());
    for (size_t j = x->size(); j-- > 0;) {
        t[j] = static_cast<uint32_t>(n % y->size());
        n /= y->size();
    }
    return TableFun(x, y, std::move(t));
}

inline std::vector<TableFun> enumerate_functions(const SetPtr& x, const SetPtr& y,
                                                 size_t cap = kDefaultFunctionCap) {
    size_t n = function_count(x, y, cap);
    std::vector<TableFun> fs;
    fs.reserve(n);
    for (size_t i = 0; i < n; ++i) fs.push_back(nth_function(x, y, i));
    return fs;
}

inline size_t function_index(const TableFun& f) {
    size_t n = 0;
    for (uint32_t d : f.tab) n = n * f.cod->size() + d;
    return n;
}

// ---------------------------------------------------------------------------
// Relation: a decidable endo-relation on an index-addressed carrier, lazily
// evaluated with optional materialization.

struct Relation {
    size_t carrier = 0;
    std::function<bool(size_t, size_t)> member;
    std::optional<std::vector<std::pair<uint32_t, uint32_t>>> pairs;

    bool contains(size_t a, size_t b) const {
        if (a >= carrier || b >= carrier) throw DomainError("relation index out of range");
        return member(a, b);
    }

    void materialize(size_t pair_cap = kDefaultFunctionCap) {
        if (pairs) return;
        if (carrier != 0 && carrier > pair_cap / carrier)
            throw EnumerationCapExceeded("relation materialization over " + std::to_string(carrier) +
                                         "^2 pairs exceeds cap");
        std::vector<std::pair<uint32_t, uint32_t>> ps;
        for (size_t a = 0; a < carrier; ++a)
            for (size_t b = 0; b < carrier; ++b)
                if (member(a, b)) ps.emplace_back(static_cast<uint32_t>(a), static_cast<uint32_t>(b));
        pairs = std::move(ps);
    }

    // Meet of two materialized relations over the same carrier.
    static Relation intersect(const Relation& r1, const Relation& r2) {
        if (r1.carrier != r2.carrier) throw Error("relation intersection: carrier mismatch");
        if (!r1.pairs || !r2.pairs) throw Error("relation intersection requires materialized relations");
        Relation out;
        out.carrier = r1.carrier;
        std::vector<std::pair<uint32_t, uint32_t>> ps;
        std::set_intersection(r1.pairs->begin(), r1.pairs->end(), r2.pairs->begin(), r2.pairs->end(),
                              std::back_inserter(ps));
        auto shared = std::make_shared<std::vector<std::pair<uint32_t, uint32_t>>>(ps);
        out.member = [shared](size_t a, size_t b) {
            return std::binary_search(shared->begin(), shared->end(),
                                      std::make_pair(static_cast<uint32_t>(a), static_cast<uint32_t>(b)));
        };
        out.pairs = std::move(ps);
        return out;
    }
};

} // namespace og

#pragma once

// Boundary checking with inference for backward carriers. Forward carriers
// are always written in the source; backward carriers of trivial atoms
// (lift without an explicit contravariant part, id, copy, delete, swap) and
// of argmax decisions are inferred from the composition they sit in.
//
// Rows of backward factors are unified across each sequential composition.
// A decision's inferred utility carrier occupies exactly one factor; the
// trivial atoms absorb whatever is left (leftmost first). Anything still
// unresolved after the fixpoint defaults to the unit carrier, which makes a
// bare `lift f` the plain covariant lifting.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "og/finite.hpp"
#include "og/lang/ast.hpp"
#include "og/lang/parser.hpp"
#include "og/lens.hpp"
#include "og/selection.hpp"

namespace og::lang {

struct Env {
    std::map<std::string, SetPtr> types; // sets and outcomes share one namespace
    std::map<std::string, TableFun> funs;
    std::map<std::string, SelectionFunction> table_selections;
    std::map<std::string, SelRef> selection_aliases;
    std::map<std::string, std::pair<Boundary, Boundary>> game_boundaries; // dom, cod
};

// --- value resolution against an expected carrier ---

inline std::optional<Value> context_free_value(const RawValue& r) {
    switch (r.kind) {
    case RawValue::Kind::Num: return Value::num(r.num);
    case RawValue::Kind::Star: return Value::star();
    case RawValue::Kind::Tuple: {
        std::vector<Value> t;
        for (const auto& c : r.tuple) {
            auto v = context_free_value(c);
            if (!v) return std::nullopt;
            t.push_back(std::move(*v));
        }
        return Value::tuple(std::move(t));
    }
    case RawValue::Kind::Ident: return std::nullopt;
    }
    return std::nullopt;
}

inline std::optional<Value> resolve_raw(const RawValue& r, const SetPtr& expected) {
    if (expected->is_product()) {
        if (r.kind != RawValue::Kind::Tuple || r.tuple.size() != expected->factors().size())
            return std::nullopt;
        std::vector<Value> t;
        for (size_t i = 0; i < r.tuple.size(); ++i) {
            auto v = resolve_raw(r.tuple[i], expected->factors()[i]);
            if (!v) return std::nullopt;
            t.push_back(std::move(*v));
        }
        Value v = Value::tuple(std::move(t));
        return expected->contains(v) ? std::optional<Value>(v) : std::nullopt;
    }
    if (r.kind == RawValue::Kind::Ident) {
        Value v = Value::atom(expected->name(), r.ident);
        return expected->contains(v) ? std::optional<Value>(v) : std::nullopt;
    }
    if (r.kind == RawValue::Kind::Num) {
        Value v = Value::num(r.num);
        if (expected->contains(v)) return v;
        // numeric label of an atom carrier
        if (r.num.denominator() == 1) {
            Value a = Value::atom(expected->name(), std::to_string(r.num.numerator()));
            if (expected->contains(a)) return a;
        }
        return std::nullopt;
    }
    auto v = context_free_value(r);
    if (v && expected->contains(*v)) return v;
    return std::nullopt;
}

// --- environment construction from declarations ---

inline Env build_env(const SourceUnit& u, std::vector<Diagnostic>& diags) {
    Env env;
    env.types["1"] = FiniteSet::unit();
    auto dup = [&](const std::string& name, SrcSpan span, const char* kind) {
        diags.push_back({Diagnostic::Severity::Error, span,
                         std::string(kind) + " '" + name + "' is declared twice", "", ""});
    };

    for (const auto& d : u.sets) {
        if (env.types.count(d.name)) {
            dup(d.name, d.span, "carrier");
            continue;
        }
        try {
            env.types[d.name] = FiniteSet::atoms(d.name, d.labels);
        } catch (const Error& e) {
            diags.push_back({Diagnostic::Severity::Error, d.span, e.what(), "", ""});
        }
    }
    for (const auto& d : u.outcomes) {
        if (env.types.count(d.name)) {
            dup(d.name, d.span, "carrier");
            continue;
        }
        try {
            if (!d.product_of.empty()) {
                std::vector<SetPtr> fs;
                for (const auto& n : d.product_of) {
                    auto it = env.types.find(n);
                    if (it == env.types.end())
                        throw Error("unknown carrier '" + n + "'");
                    fs.push_back(it->second);
                }
                auto p = product(fs);
                // keep the declared name as an alias of the product carrier
                env.types[d.name] = p;
            } else {
                std::vector<Value> vals;
                for (const auto& rv : d.values) {
                    auto v = context_free_value(rv);
                    if (!v) throw Error("outcome elements must be rationals or tuples of rationals");
                    vals.push_back(std::move(*v));
                }
                env.types[d.name] = FiniteSet::values(d.name, std::move(vals));
            }
        } catch (const Error& e) {
            diags.push_back({Diagnostic::Severity::Error, d.span, e.what(), "", ""});
        }
    }
    auto resolve_type = [&](const TypeExpr& t) -> SetPtr {
        SetPtr s = FiniteSet::unit();
        for (const auto& n : t.factors) {
            auto it = env.types.find(n);
            if (it == env.types.end()) {
                diags.push_back({Diagnostic::Severity::Error, t.span, "unknown carrier '" + n + "'", "", ""});
                return nullptr;
            }
            s = tensor_set(s, it->second);
        }
        return s;
    };
    for (const auto& d : u.funs) {
        if (env.funs.count(d.name)) {
            dup(d.name, d.span, "function");
            continue;
        }
        SetPtr dom = resolve_type(d.dom), cod = resolve_type(d.cod);
        if (!dom || !cod) continue;
        std::vector<std::pair<Value, Value>> entries;
        bool bad = false;
        for (const auto& [a, b] : d.entries) {
            auto va = resolve_raw(a, dom);
            auto vb = resolve_raw(b, cod);
            if (!va || !vb) {
                diags.push_back({Diagnostic::Severity::Error, (!va ? a.span : b.span),
                                 "value " + (!va ? a.str() : b.str()) + " is not an element of " +
                                     (!va ? dom->name() : cod->name()),
                                 "", ""});
                bad = true;
                continue;
            }
            entries.emplace_back(std::move(*va), std::move(*vb));
        }
        if (bad) continue;
        try {
            env.funs.emplace(d.name, TableFun::from_pairs(dom, cod, entries));
        } catch (const Error& e) {
            diags.push_back({Diagnostic::Severity::Error, d.span, e.what(), "", ""});
        }
    }
    for (const auto& d : u.selections) {
        if (env.table_selections.count(d.name) || env.selection_aliases.count(d.name)) {
            dup(d.name, d.span, "selection");
            continue;
        }
        if (d.is_builtin) {
            env.selection_aliases[d.name] = d.builtin;
            continue;
        }
        SetPtr choices = resolve_type(d.choices_t), outcome = resolve_type(d.outcome_t);
        if (!choices || !outcome) continue;
        std::map<std::vector<uint32_t>, std::vector<bool>> entries;
        bool bad = false;
        for (const auto& e : d.entries) {
            std::vector<uint32_t> k(choices->size(), 0);
            std::vector<bool> seen(choices->size(), false);
            std::vector<bool> mask(choices->size(), false);
            for (const auto& [ry, rr] : e.continuation) {
                auto y = resolve_raw(ry, choices);
                auto r = resolve_raw(rr, outcome);
                if (!y || !r) {
                    diags.push_back({Diagnostic::Severity::Error, ry.span,
                                     "bad continuation entry in selection '" + d.name + "'", "", ""});
                    bad = true;
                    break;
                }
                size_t yi = choices->index_of_or_throw(*y);
                seen[yi] = true;
                k[yi] = static_cast<uint32_t>(outcome->index_of_or_throw(*r));
            }
            for (bool s : seen)
                if (!s) {
                    diags.push_back({Diagnostic::Severity::Error, d.span,
                                     "selection '" + d.name + "': continuation entry is not total", "", ""});
                    bad = true;
                    break;
                }
            for (const auto& rc : e.chosen) {
                auto y = resolve_raw(rc, choices);
                if (!y) {
                    diags.push_back({Diagnostic::Severity::Error, rc.span,
                                     rc.str() + " is not an element of " + choices->name(), "", ""});
                    bad = true;
                    break;
                }
                mask[choices->index_of_or_throw(*y)] = true;
            }
            if (bad) break;
            entries[k] = mask;
        }
        if (bad) continue;
        try {
            env.table_selections.emplace(d.name, table_selection(d.name, choices, outcome, entries));
        } catch (const Error& e) {
            diags.push_back({Diagnostic::Severity::Error, d.span, e.what(), "", ""});
        }
    }
    return env;
}

// --- backward-row inference ---

namespace detail {

struct BVar {
    bool arity_one = false;
    bool numeric = false;
    std::optional<int> component;
    SrcSpan span;
    std::optional<std::vector<SetPtr>> resolved;
};

using RowItem = std::variant<SetPtr, int>;
using Row = std::vector<RowItem>;

struct Equation {
    Row a, b;
    SrcSpan span;
    bool done = false;
};

inline Row factor_row(const SetPtr& s) {
    Row r;
    if (!s || s->is_unit()) return r;
    if (s->is_product())
        for (const auto& f : s->factors()) r.emplace_back(f);
    else
        r.emplace_back(s);
    return r;
}

inline std::string row_str(const Row& r) {
    if (r.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) s += "*";
        if (std::holds_alternative<SetPtr>(r[i])) s += std::get<SetPtr>(r[i])->name();
        else s += "?";
    }
    return s;
}

class Inference {
public:
    explicit Inference(std::vector<Diagnostic>& diags) : diags_(diags) {}

    int fresh(bool arity_one, bool numeric, std::optional<int> comp, SrcSpan span) {
        vars_.push_back(BVar{arity_one, numeric, comp, span, std::nullopt});
        return static_cast<int>(vars_.size()) - 1;
    }

    void equate(Row a, Row b, SrcSpan span) { eqs_.push_back({std::move(a), std::move(b), span}); }

    Row substitute(const Row& r) const {
        Row out;
        for (const auto& item : r) {
            if (std::holds_alternative<SetPtr>(item)) {
                out.push_back(item);
                continue;
            }
            const BVar& v = vars_[std::get<int>(item)];
            if (v.resolved)
                for (const auto& f : *v.resolved) out.emplace_back(f);
            else
                out.push_back(item);
        }
        return out;
    }

    void solve() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto& eq : eqs_) {
                if (eq.done) continue;
                switch (step(eq)) {
                case Step::Solved:
                case Step::Failed: eq.done = true; progress = true; break;
                case Step::Deferred: break;
                }
            }
        }
        for (auto& v : vars_)
            if (!v.resolved) v.resolved = std::vector<SetPtr>{};
        for (auto& eq : eqs_) {
            if (eq.done) continue;
            Row a = substitute(eq.a), b = substitute(eq.b);
            if (!rows_concrete_equal(a, b)) mismatch(eq, a, b);
        }
    }

    SetPtr row_set(const Row& r) const {
        Row s = substitute(r);
        std::vector<SetPtr> fs;
        for (const auto& item : s) {
            if (!std::holds_alternative<SetPtr>(item)) return nullptr;
            fs.push_back(std::get<SetPtr>(item));
        }
        if (fs.empty()) return FiniteSet::unit();
        return product(fs);
    }

private:
    enum class Step { Solved, Failed, Deferred };

    static bool rows_concrete_equal(const Row& a, const Row& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (!std::holds_alternative<SetPtr>(a[i]) || !std::holds_alternative<SetPtr>(b[i]))
                return false;
            if (!sets_equal(std::get<SetPtr>(a[i]), std::get<SetPtr>(b[i]))) return false;
        }
        return true;
    }

    void mismatch(const Equation& eq, const Row& a, const Row& b) {
        diags_.push_back({Diagnostic::Severity::Error, eq.span,
                          "backward carriers do not match across this composition", row_str(a),
                          row_str(b)});
    }

    bool assign(int var, std::vector<SetPtr> factors, SrcSpan eq_span) {
        BVar& v = vars_[var];
        if (v.numeric) {
            if (factors.size() != 1) {
                diags_.push_back({Diagnostic::Severity::Error, v.span,
                                  "cannot infer a single utility carrier here", "one numeric carrier",
                                  row_str(Row(factors.begin(), factors.end()))});
                return false;
            }
            const SetPtr& s = factors[0];
            for (size_t i = 0; i < s->size(); ++i) {
                try {
                    numeric_component(s->element(i), v.component);
                } catch (const NonNumericOutcome&) {
                    Diagnostic d{Diagnostic::Severity::Error, v.span,
                                 "selection needs a numeric outcome carrier", "a numeric carrier",
                                 s->name()};
                    d.span = eq_span.line ? eq_span : v.span;
                    diags_.push_back(std::move(d));
                    return false;
                }
            }
        }
        v.resolved = std::move(factors);
        return true;
    }

    Step step(Equation& eq) {
        Row a = substitute(eq.a), b = substitute(eq.b);
        bool va = row_has_var(a), vb = row_has_var(b);
        if (!va && !vb) {
            if (!rows_concrete_equal(a, b)) {
                mismatch(eq, a, b);
                return Step::Failed;
            }
            return Step::Solved;
        }
        if (va && vb) {
            if (a.size() == b.size()) {
                bool same = true;
                for (size_t i = 0; i < a.size(); ++i)
                    if (!(item_equal(a[i], b[i]))) {
                        same = false;
                        break;
                    }
                if (same) return Step::Solved;
            }
            return Step::Deferred;
        }
        const Row& vr = va ? a : b;
        const Row& cr = va ? b : a;
        std::vector<SetPtr> conc;
        for (const auto& item : cr) conc.push_back(std::get<SetPtr>(item));

        size_t needed = 0;
        int first_free = -1;
        for (size_t i = 0; i < vr.size(); ++i) {
            if (std::holds_alternative<SetPtr>(vr[i])) ++needed;
            else if (vars_[std::get<int>(vr[i])].arity_one) ++needed;
            else if (first_free < 0) first_free = static_cast<int>(i);
        }
        if (conc.size() < needed || (first_free < 0 && conc.size() != needed)) {
            mismatch(eq, a, b);
            return Step::Failed;
        }
        size_t leftover = conc.size() - needed;
        size_t cursor = 0;
        for (size_t i = 0; i < vr.size(); ++i) {
            if (std::holds_alternative<SetPtr>(vr[i])) {
                if (!sets_equal(std::get<SetPtr>(vr[i]), conc[cursor])) {
                    mismatch(eq, a, b);
                    return Step::Failed;
                }
                ++cursor;
                continue;
            }
            int vid = std::get<int>(vr[i]);
            size_t take = vars_[vid].arity_one ? 1 : (static_cast<int>(i) == first_free ? leftover : 0);
            std::vector<SetPtr> fs(conc.begin() + cursor, conc.begin() + cursor + take);
            cursor += take;
            if (!assign(vid, std::move(fs), eq.span)) return Step::Failed;
        }
        return Step::Solved;
    }

    static bool row_has_var(const Row& r) {
        for (const auto& i : r)
            if (std::holds_alternative<int>(i)) return true;
        return false;
    }
    static bool item_equal(const RowItem& x, const RowItem& y) {
        if (x.index() != y.index()) return false;
        if (std::holds_alternative<int>(x)) return std::get<int>(x) == std::get<int>(y);
        return sets_equal(std::get<SetPtr>(x), std::get<SetPtr>(y));
    }

    std::vector<BVar> vars_;
    std::vector<Equation> eqs_;
    std::vector<Diagnostic>& diags_;
};

} // namespace detail

// --- per-game boundary assignment ---

class Checker {
public:
    Checker(Env& env, std::vector<Diagnostic>& diags) : env_(env), diags_(diags), inf_(diags) {}

    bool check_game(GameExpr& root) {
        size_t before = diags_.size();
        if (!visit(root)) return false;
        inf_.solve();
        if (diags_.size() != before) return false;
        assign(root);
        return diags_.size() == before;
    }

private:
    struct NodeTy {
        SetPtr dom_f, cod_f;
        detail::Row dom_b, cod_b;
    };

    SetPtr resolve_type(const TypeExpr& t) {
        SetPtr s = FiniteSet::unit();
        for (const auto& n : t.factors) {
            auto it = env_.types.find(n);
            if (it == env_.types.end()) {
                error(t.span, "unknown carrier '" + n + "'");
                return nullptr;
            }
            s = tensor_set(s, it->second);
        }
        return s;
    }

    void error(SrcSpan span, const std::string& msg, std::string expected = "", std::string found = "") {
        diags_.push_back({Diagnostic::Severity::Error, span, msg, std::move(expected), std::move(found)});
    }

    std::optional<NodeTy> visit(GameExpr& e) {
        using K = GameExpr::Kind;
        NodeTy t;
        switch (e.kind) {
        case K::Decision: {
            SetPtr obs = resolve_type(e.type_a), mov = resolve_type(e.type_b);
            if (!obs || !mov) return std::nullopt;
            t.dom_f = obs;
            t.cod_f = mov;
            SelRef sel = e.sel;
            if (sel.kind == SelRef::Kind::Named) {
                auto alias = env_.selection_aliases.find(sel.name);
                auto table = env_.table_selections.find(sel.name);
                if (alias != env_.selection_aliases.end()) {
                    sel = alias->second;
                } else if (table != env_.table_selections.end()) {
                    if (!sets_equal(table->second.choices, mov)) {
                        error(e.sel.span, "selection '" + sel.name + "' chooses from another carrier",
                              mov->name(), table->second.choices->name());
                        return std::nullopt;
                    }
                    t.cod_b = detail::factor_row(table->second.outcome);
                    break;
                } else {
                    error(sel.span, "unknown selection '" + sel.name + "'");
                    return std::nullopt;
                }
            }
            if (e.outcome_t) {
                SetPtr out = resolve_type(*e.outcome_t);
                if (!out) return std::nullopt;
                t.cod_b = detail::factor_row(out);
            } else if (sel.kind == SelRef::Kind::Fix || sel.kind == SelRef::Kind::AntiFix) {
                t.cod_b = detail::factor_row(mov);
            } else {
                t.cod_b.emplace_back(inf_.fresh(true, true, sel.component, e.span));
            }
            break;
        }
        case K::Lift: {
            auto f = env_.funs.find(e.f_name);
            if (f == env_.funs.end()) {
                error(e.span, "unknown function '" + e.f_name + "'");
                return std::nullopt;
            }
            t.dom_f = f->second.dom;
            t.cod_f = f->second.cod;
            if (!e.g_name.empty()) {
                auto g = env_.funs.find(e.g_name);
                if (g == env_.funs.end()) {
                    error(e.span, "unknown function '" + e.g_name + "'");
                    return std::nullopt;
                }
                t.dom_b = detail::factor_row(g->second.cod);
                t.cod_b = detail::factor_row(g->second.dom);
            } else {
                int v = inf_.fresh(false, false, std::nullopt, e.span);
                t.dom_b.emplace_back(v);
                t.cod_b.emplace_back(v);
            }
            break;
        }
        case K::Id: {
            SetPtr s = resolve_type(e.type_a);
            if (!s) return std::nullopt;
            t.dom_f = t.cod_f = s;
            int v = inf_.fresh(false, false, std::nullopt, e.span);
            t.dom_b.emplace_back(v);
            t.cod_b.emplace_back(v);
            break;
        }
        case K::Counit: {
            SetPtr s = resolve_type(e.type_a);
            if (!s) return std::nullopt;
            t.dom_f = s;
            t.cod_f = FiniteSet::unit();
            t.dom_b = detail::factor_row(s);
            break;
        }
        case K::Copy: {
            SetPtr s = resolve_type(e.type_a);
            if (!s) return std::nullopt;
            t.dom_f = s;
            t.cod_f = tensor_set(s, s);
            int v = inf_.fresh(false, false, std::nullopt, e.span);
            t.dom_b.emplace_back(v);
            t.cod_b.emplace_back(v);
            break;
        }
        case K::Delete: {
            SetPtr s = resolve_type(e.type_a);
            if (!s) return std::nullopt;
            t.dom_f = s;
            t.cod_f = FiniteSet::unit();
            int v = inf_.fresh(false, false, std::nullopt, e.span);
            t.dom_b.emplace_back(v);
            t.cod_b.emplace_back(v);
            break;
        }
        case K::Swap: {
            SetPtr a = resolve_type(e.type_a), b = resolve_type(e.type_b);
            if (!a || !b) return std::nullopt;
            t.dom_f = tensor_set(a, b);
            t.cod_f = tensor_set(b, a);
            int v = inf_.fresh(false, false, std::nullopt, e.span);
            t.dom_b.emplace_back(v);
            t.cod_b.emplace_back(v);
            break;
        }
        case K::Ref: {
            auto it = env_.game_boundaries.find(e.ref);
            if (it == env_.game_boundaries.end()) {
                error(e.span, "unknown game '" + e.ref + "'");
                return std::nullopt;
            }
            t.dom_f = it->second.first.fwd;
            t.cod_f = it->second.second.fwd;
            t.dom_b = detail::factor_row(it->second.first.bwd);
            t.cod_b = detail::factor_row(it->second.second.bwd);
            break;
        }
        case K::Seq: {
            auto l = visit(*e.left);
            auto r = visit(*e.right);
            if (!l || !r) return std::nullopt;
            if (!sets_equal(l->cod_f, r->dom_f)) {
                error(e.span, "cannot compose: forward carriers do not match", l->cod_f->name(),
                      r->dom_f->name());
                return std::nullopt;
            }
            inf_.equate(l->cod_b, r->dom_b, e.span);
            t.dom_f = l->dom_f;
            t.cod_f = r->cod_f;
            t.dom_b = l->dom_b;
            t.cod_b = r->cod_b;
            break;
        }
        case K::Tensor: {
            auto l = visit(*e.left);
            auto r = visit(*e.right);
            if (!l || !r) return std::nullopt;
            t.dom_f = tensor_set(l->dom_f, r->dom_f);
            t.cod_f = tensor_set(l->cod_f, r->cod_f);
            t.dom_b = l->dom_b;
            t.dom_b.insert(t.dom_b.end(), r->dom_b.begin(), r->dom_b.end());
            t.cod_b = l->cod_b;
            t.cod_b.insert(t.cod_b.end(), r->cod_b.begin(), r->cod_b.end());
            break;
        }
        }
        types_[&e] = t;
        return t;
    }

    void assign(GameExpr& e) {
        auto it = types_.find(&e);
        if (it == types_.end()) return;
        SetPtr db = inf_.row_set(it->second.dom_b);
        SetPtr cb = inf_.row_set(it->second.cod_b);
        e.dom_b = Boundary(it->second.dom_f, db ? db : FiniteSet::unit());
        e.cod_b = Boundary(it->second.cod_f, cb ? cb : FiniteSet::unit());
        if (e.left) assign(*e.left);
        if (e.right) assign(*e.right);
    }

    Env& env_;
    std::vector<Diagnostic>& diags_;
    detail::Inference inf_;
    std::map<const GameExpr*, NodeTy> types_;
};

struct CheckedUnit {
    SourceUnit unit;
    Env env;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

} // namespace og::lang

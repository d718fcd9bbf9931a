#pragma once

// Compilation of a checked source unit into open-game values. The fold is
// structural: every syntactic combinator maps onto the corresponding game
// constructor, and decision slot ids carry the source position of the atom
// so they are stable across recompiles of unchanged sources.

#include <map>
#include <string>
#include <vector>

#include "og/decisions.hpp"
#include "og/game.hpp"
#include "og/lang/typecheck.hpp"

namespace og::lang {

struct Program {
    Env env;
    std::map<std::string, OpenGame> games;
    std::map<std::string, ExprPtr> game_exprs; // typed ASTs, declaration order preserved in names
    std::vector<std::string> game_order;
    std::map<std::string, std::pair<std::string, Context>> contexts; // name -> (game, context)
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
    const OpenGame* find_game(const std::string& name) const {
        auto it = games.find(name);
        return it == games.end() ? nullptr : &it->second;
    }
};

inline CheckedUnit typecheck(SourceUnit unit, const Limits& = {}) {
    CheckedUnit out;
    out.env = build_env(unit, out.diagnostics);
    if (out.diagnostics.empty()) {
        for (auto& g : unit.games) {
            Checker ck(out.env, out.diagnostics);
            if (ck.check_game(*g.expr))
                out.env.game_boundaries[g.name] = {g.expr->dom_b, g.expr->cod_b};
            if (out.env.game_boundaries.count(g.name) == 0 && out.diagnostics.empty())
                out.diagnostics.push_back({Diagnostic::Severity::Error, g.span,
                                           "game '" + g.name + "' could not be typed", "", ""});
        }
    }
    out.unit = std::move(unit);
    return out;
}

namespace detail {

inline std::string slot_id_for(const GameExpr& e) {
    return "d" + std::to_string(e.span.line) + ":" + std::to_string(e.span.col);
}

class CompileFold {
public:
    CompileFold(const Env& env, const std::map<std::string, OpenGame>& games,
                std::vector<Diagnostic>& diags)
        : env_(env), games_(games), diags_(diags) {}

    std::optional<OpenGame> fold(const GameExpr& e) {
        using K = GameExpr::Kind;
        try {
            switch (e.kind) {
            case K::Decision: {
                SetPtr obs = e.dom_b.fwd, mov = e.cod_b.fwd, out = e.cod_b.bwd;
                SelectionFunction sel = make_selection(e.sel, mov, out, e.span);
                return decision(obs, mov, std::move(sel), slot_id_for(e));
            }
            case K::Lift: {
                const TableFun& f = env_.funs.at(e.f_name);
                if (!e.g_name.empty()) return lift(f, env_.funs.at(e.g_name));
                return lift(f, TableFun::identity(e.cod_b.bwd));
            }
            case K::Id: return identity(e.dom_b);
            case K::Counit: return counit(e.dom_b.fwd);
            case K::Copy: return copy_game(e.dom_b.fwd, e.dom_b.bwd);
            case K::Delete: return delete_game(e.dom_b.fwd, e.dom_b.bwd);
            case K::Swap:
                return swap_game(resolve(e.type_a), resolve(e.type_b), e.dom_b.bwd);
            case K::Ref: {
                auto it = games_.find(e.ref);
                if (it == games_.end()) {
                    diags_.push_back({Diagnostic::Severity::Error, e.span,
                                      "game '" + e.ref + "' is not compiled", "", ""});
                    return std::nullopt;
                }
                return it->second;
            }
            case K::Seq: {
                auto l = fold(*e.left);
                auto r = fold(*e.right);
                if (!l || !r) return std::nullopt;
                return compose(*l, *r);
            }
            case K::Tensor: {
                auto l = fold(*e.left);
                auto r = fold(*e.right);
                if (!l || !r) return std::nullopt;
                return tensor(*l, *r);
            }
            }
        } catch (const Error& err) {
            diags_.push_back({Diagnostic::Severity::Error, e.span, err.what(), "", ""});
        }
        return std::nullopt;
    }

private:
    SetPtr resolve(const TypeExpr& t) {
        SetPtr s = FiniteSet::unit();
        for (const auto& n : t.factors) s = tensor_set(s, env_.types.at(n));
        return s;
    }

    SelectionFunction make_selection(const SelRef& sr, const SetPtr& moves, const SetPtr& outcome,
                                     SrcSpan span) {
        switch (sr.kind) {
        case SelRef::Kind::Argmax: return argmax_selection(moves, outcome, sr.component);
        case SelRef::Kind::Fix: return fix_selection(moves);
        case SelRef::Kind::AntiFix: return antifix_selection(moves);
        case SelRef::Kind::Named: {
            auto alias = env_.selection_aliases.find(sr.name);
            if (alias != env_.selection_aliases.end()) return make_selection(alias->second, moves, outcome, span);
            return env_.table_selections.at(sr.name);
        }
        }
        throw Error("unreachable");
    }

    const Env& env_;
    const std::map<std::string, OpenGame>& games_;
    std::vector<Diagnostic>& diags_;
};

} // namespace detail

inline Program compile(CheckedUnit checked, const Limits& = {}) {
    Program p;
    p.diagnostics = std::move(checked.diagnostics);
    p.env = std::move(checked.env);
    if (!p.diagnostics.empty()) return p;

    for (auto& g : checked.unit.games) {
        detail::CompileFold fold(p.env, p.games, p.diagnostics);
        auto game = fold.fold(*g.expr);
        if (!game) continue;
        p.games.emplace(g.name, std::move(*game));
        p.game_exprs[g.name] = g.expr;
        p.game_order.push_back(g.name);
    }
    for (const auto& c : checked.unit.contexts) {
        auto it = p.games.find(c.game);
        if (it == p.games.end()) {
            p.diagnostics.push_back({Diagnostic::Severity::Error, c.span,
                                     "context '" + c.name + "' refers to unknown game '" + c.game + "'",
                                     "", ""});
            continue;
        }
        const OpenGame& g = it->second;
        auto state = resolve_raw(c.state, g.dom().fwd);
        if (!state) {
            p.diagnostics.push_back({Diagnostic::Severity::Error, c.span,
                                     "context state " + c.state.str() + " is not an element of " +
                                         g.dom().fwd->name(),
                                     "", ""});
            continue;
        }
        std::vector<std::pair<Value, Value>> entries;
        bool bad = false;
        for (const auto& [ry, rr] : c.continuation) {
            auto y = resolve_raw(ry, g.cod().fwd);
            auto r = resolve_raw(rr, g.cod().bwd);
            if (!y || !r) {
                p.diagnostics.push_back({Diagnostic::Severity::Error, ry.span,
                                         "bad continuation entry in context '" + c.name + "'", "", ""});
                bad = true;
                break;
            }
            entries.emplace_back(std::move(*y), std::move(*r));
        }
        if (bad) continue;
        try {
            Context ctx{std::move(*state), TableFun::from_pairs(g.cod().fwd, g.cod().bwd, entries)};
            p.contexts.emplace(c.name, std::make_pair(c.game, std::move(ctx)));
        } catch (const Error& e) {
            p.diagnostics.push_back({Diagnostic::Severity::Error, c.span, e.what(), "", ""});
        }
    }
    return p;
}

inline Program compile(SourceUnit unit, const Limits& lim = {}) {
    return compile(typecheck(std::move(unit), lim), lim);
}

// Convenience: parse + typecheck + compile.
inline Program compile_source(const std::string& text, const Limits& lim = {}) {
    ParseResult pr = parse(text);
    if (!pr.ok()) {
        Program p;
        p.diagnostics = std::move(pr.diagnostics);
        return p;
    }
    return compile(std::move(pr.unit), lim);
}

} // namespace og::lang

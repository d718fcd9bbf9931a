#pragma once

// Deterministic recursive-descent parser for the game language, and the
// matching printer. `;` is sequential composition in diagram order and
// binds looser than `||`; both are left-associative.

#include <sstream>
#include <string>
#include <vector>

#include "og/lang/ast.hpp"
#include "og/lang/lexer.hpp"

namespace og::lang {

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

    SourceUnit parse_unit() {
        SourceUnit u;
        while (!at(Tok::Eof)) {
            size_t before = pos_;
            switch (peek().kind) {
            case Tok::KwSet: parse_set(u); break;
            case Tok::KwOutcome: parse_outcome(u); break;
            case Tok::KwFun: parse_fun(u); break;
            case Tok::KwSelection: parse_selection(u); break;
            case Tok::KwGame: parse_game(u); break;
            case Tok::KwContext: parse_context(u); break;
            default:
                error(peek().span, "expected a declaration (set, outcome, fun, selection, game, context)");
                sync();
                break;
            }
            if (pos_ == before) ++pos_; // always make progress
        }
        return u;
    }

private:
    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    const Token* expect(Tok k, const std::string& what) {
        if (at(k)) return &toks_[pos_++];
        error(peek().span, "expected " + what);
        return nullptr;
    }
    void error(SrcSpan span, const std::string& msg) {
        diags_.push_back({Diagnostic::Severity::Error, span, msg, "", ""});
    }
    // skip to the start of the next declaration
    void sync() {
        while (!at(Tok::Eof)) {
            switch (peek().kind) {
            case Tok::KwSet:
            case Tok::KwOutcome:
            case Tok::KwFun:
            case Tok::KwSelection:
            case Tok::KwGame:
            case Tok::KwContext:
                return;
            default: ++pos_;
            }
        }
    }

    std::string ident(const std::string& what) {
        if (at(Tok::Ident)) return toks_[pos_++].text;
        error(peek().span, "expected " + what);
        return "";
    }

    // element labels may be identifiers or bare integers
    std::string label() {
        if (at(Tok::Ident) || at(Tok::Int)) return toks_[pos_++].text;
        if (at(Tok::Minus) && peek(1).kind == Tok::Int) {
            std::string s = "-" + peek(1).text;
            pos_ += 2;
            return s;
        }
        error(peek().span, "expected an element label");
        return "";
    }

    TypeExpr type_expr() {
        TypeExpr t;
        t.span = peek().span;
        do {
            if (at(Tok::Int) && peek().num == 1) {
                ++pos_; // the unit carrier contributes no factor
            } else if (at(Tok::Ident)) {
                t.factors.push_back(toks_[pos_++].text);
            } else {
                error(peek().span, "expected a carrier name or 1");
                break;
            }
        } while (accept(Tok::Star));
        return t;
    }

    RawValue raw_value() {
        RawValue v;
        v.span = peek().span;
        if (accept(Tok::Star)) {
            v.kind = RawValue::Kind::Star;
            return v;
        }
        if (at(Tok::LParen)) {
            ++pos_;
            v.kind = RawValue::Kind::Tuple;
            v.tuple.push_back(raw_value());
            while (accept(Tok::Comma)) v.tuple.push_back(raw_value());
            expect(Tok::RParen, "')'");
            return v;
        }
        bool neg = accept(Tok::Minus);
        if (at(Tok::Int)) {
            long long n = toks_[pos_++].num;
            long long d = 1;
            if (accept(Tok::Slash)) {
                if (const Token* t = expect(Tok::Int, "a denominator")) d = t->num;
            }
            v.kind = RawValue::Kind::Num;
            v.num = Rat(neg ? -n : n, d);
            return v;
        }
        if (neg) {
            error(peek().span, "expected a number after '-'");
            return v;
        }
        if (at(Tok::Ident)) {
            v.kind = RawValue::Kind::Ident;
            v.ident = toks_[pos_++].text;
            return v;
        }
        error(peek().span, "expected a value");
        return v;
    }

    SelRef sel_ref() {
        SelRef s;
        s.span = peek().span;
        if (accept(Tok::KwArgmax)) {
            s.kind = SelRef::Kind::Argmax;
            if (accept(Tok::LBracket)) {
                if (const Token* t = expect(Tok::Int, "a component index")) s.component = static_cast<int>(t->num);
                expect(Tok::RBracket, "']'");
            }
            return s;
        }
        if (accept(Tok::KwFix)) {
            s.kind = SelRef::Kind::Fix;
            return s;
        }
        if (accept(Tok::KwAntifix)) {
            s.kind = SelRef::Kind::AntiFix;
            return s;
        }
        s.kind = SelRef::Kind::Named;
        s.name = ident("a selection function");
        return s;
    }

    void parse_set(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        SetDecl d;
        d.span = span;
        d.name = ident("a set name");
        expect(Tok::Eq, "'='");
        expect(Tok::LBrace, "'{'");
        if (!at(Tok::RBrace)) {
            d.labels.push_back(label());
            while (accept(Tok::Comma)) d.labels.push_back(label());
        }
        expect(Tok::RBrace, "'}'");
        u.order.emplace_back(SourceUnit::DeclKind::Set, u.sets.size());
        u.sets.push_back(std::move(d));
    }

    void parse_outcome(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        OutcomeDecl d;
        d.span = span;
        d.name = ident("an outcome name");
        expect(Tok::Eq, "'='");
        if (accept(Tok::LBrace)) {
            if (!at(Tok::RBrace)) {
                d.values.push_back(raw_value());
                while (accept(Tok::Comma)) d.values.push_back(raw_value());
            }
            expect(Tok::RBrace, "'}'");
        } else {
            d.product_of.push_back(ident("a carrier name"));
            while (accept(Tok::Star)) d.product_of.push_back(ident("a carrier name"));
            if (d.product_of.size() < 2)
                error(span, "an outcome alias must be a product of at least two carriers or a value list");
        }
        u.order.emplace_back(SourceUnit::DeclKind::Outcome, u.outcomes.size());
        u.outcomes.push_back(std::move(d));
    }

    void parse_fun(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        FunDecl d;
        d.span = span;
        d.name = ident("a function name");
        expect(Tok::Colon, "':'");
        d.dom = type_expr();
        expect(Tok::Arrow, "'->'");
        d.cod = type_expr();
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace) && !at(Tok::Eof)) {
            RawValue lhs = raw_value();
            expect(Tok::Arrow, "'->'");
            RawValue rhs = raw_value();
            d.entries.emplace_back(std::move(lhs), std::move(rhs));
            if (!accept(Tok::Semi)) break;
        }
        expect(Tok::RBrace, "'}'");
        u.order.emplace_back(SourceUnit::DeclKind::Fun, u.funs.size());
        u.funs.push_back(std::move(d));
    }

    void parse_selection(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        SelectionDecl d;
        d.span = span;
        d.name = ident("a selection name");
        expect(Tok::Eq, "'='");
        if (accept(Tok::KwTable)) {
            d.is_builtin = false;
            d.choices_t = type_expr();
            expect(Tok::Slash, "'/' between choice and outcome carriers");
            d.outcome_t = type_expr();
            expect(Tok::LBrace, "'{'");
            while (at(Tok::LBrace)) {
                SelectionDecl::Entry e;
                ++pos_;
                if (!at(Tok::RBrace)) {
                    do {
                        RawValue y = raw_value();
                        expect(Tok::Arrow, "'->'");
                        RawValue r = raw_value();
                        e.continuation.emplace_back(std::move(y), std::move(r));
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RBrace, "'}'");
                expect(Tok::Arrow, "'->'");
                expect(Tok::LBrace, "'{'");
                if (!at(Tok::RBrace)) {
                    do e.chosen.push_back(raw_value());
                    while (accept(Tok::Comma));
                }
                expect(Tok::RBrace, "'}'");
                d.entries.push_back(std::move(e));
                accept(Tok::Semi);
            }
            expect(Tok::RBrace, "'}'");
        } else {
            d.is_builtin = true;
            d.builtin = sel_ref();
            if (d.builtin.kind == SelRef::Kind::Named)
                error(d.builtin.span, "a selection alias must name a builtin (argmax, fix, antifix)");
        }
        u.order.emplace_back(SourceUnit::DeclKind::Selection, u.selections.size());
        u.selections.push_back(std::move(d));
    }

    void parse_game(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        GameDecl d;
        d.span = span;
        d.name = ident("a game name");
        expect(Tok::Eq, "'='");
        d.expr = expr();
        u.order.emplace_back(SourceUnit::DeclKind::Game, u.games.size());
        u.games.push_back(std::move(d));
    }

    void parse_context(SourceUnit& u) {
        SrcSpan span = peek().span;
        ++pos_;
        ContextDecl d;
        d.span = span;
        d.name = ident("a context name");
        expect(Tok::KwFor, "'for'");
        d.game = ident("a game name");
        expect(Tok::Eq, "'='");
        expect(Tok::LBrace, "'{'");
        if (const Token* t = expect(Tok::Ident, "'state'"); t && t->text != "state")
            error(t->span, "expected 'state'");
        expect(Tok::Colon, "':'");
        d.state = raw_value();
        expect(Tok::Comma, "','");
        if (const Token* t = expect(Tok::Ident, "'continuation'"); t && t->text != "continuation")
            error(t->span, "expected 'continuation'");
        expect(Tok::Colon, "':'");
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace) && !at(Tok::Eof)) {
            RawValue y = raw_value();
            expect(Tok::Arrow, "'->'");
            RawValue r = raw_value();
            d.continuation.emplace_back(std::move(y), std::move(r));
            if (!accept(Tok::Semi)) break;
        }
        expect(Tok::RBrace, "'}'");
        expect(Tok::RBrace, "'}'");
        u.order.emplace_back(SourceUnit::DeclKind::Context, u.contexts.size());
        u.contexts.push_back(std::move(d));
    }

    bool starts_expr() const {
        switch (peek().kind) {
        case Tok::LParen:
        case Tok::KwDecision:
        case Tok::KwLift:
        case Tok::KwId:
        case Tok::KwCounit:
        case Tok::KwCopy:
        case Tok::KwDelete:
        case Tok::KwSwap:
        case Tok::Ident:
            return true;
        default:
            return false;
        }
    }

    ExprPtr expr() {
        ExprPtr e = tensor_expr();
        while (at(Tok::Semi)) {
            SrcSpan semi = peek().span;
            ++pos_;
            if (!starts_expr()) {
                error(semi, "expected an expression after ';'");
                return e;
            }
            auto s = std::make_shared<GameExpr>();
            s->kind = GameExpr::Kind::Seq;
            s->span = semi;
            s->left = e;
            s->right = tensor_expr();
            e = s;
        }
        return e;
    }

    ExprPtr tensor_expr() {
        ExprPtr e = atom_expr();
        while (at(Tok::Par)) {
            SrcSpan par = peek().span;
            ++pos_;
            auto t = std::make_shared<GameExpr>();
            t->kind = GameExpr::Kind::Tensor;
            t->span = par;
            t->left = e;
            t->right = atom_expr();
            e = t;
        }
        return e;
    }

    ExprPtr atom_expr() {
        auto e = std::make_shared<GameExpr>();
        e->span = peek().span;
        switch (peek().kind) {
        case Tok::LParen: {
            ++pos_;
            ExprPtr inner = expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::KwDecision: {
            ++pos_;
            e->kind = GameExpr::Kind::Decision;
            e->type_a = type_expr();
            expect(Tok::Arrow, "'->'");
            e->type_b = type_expr();
            expect(Tok::KwWith, "'with'");
            e->sel = sel_ref();
            if (accept(Tok::KwOutcome)) e->outcome_t = type_expr();
            return e;
        }
        case Tok::KwLift: {
            ++pos_;
            e->kind = GameExpr::Kind::Lift;
            e->f_name = ident("a function name");
            if (accept(Tok::Slash)) e->g_name = ident("a function name");
            return e;
        }
        case Tok::KwId: {
            ++pos_;
            e->kind = GameExpr::Kind::Id;
            e->type_a = type_expr();
            return e;
        }
        case Tok::KwCounit: {
            ++pos_;
            e->kind = GameExpr::Kind::Counit;
            e->type_a = type_expr();
            return e;
        }
        case Tok::KwCopy: {
            ++pos_;
            e->kind = GameExpr::Kind::Copy;
            e->type_a = type_expr();
            return e;
        }
        case Tok::KwDelete: {
            ++pos_;
            e->kind = GameExpr::Kind::Delete;
            e->type_a = type_expr();
            return e;
        }
        case Tok::KwSwap: {
            ++pos_;
            e->kind = GameExpr::Kind::Swap;
            e->type_a = type_expr();
            e->type_b = type_expr();
            return e;
        }
        case Tok::Ident: {
            e->kind = GameExpr::Kind::Ref;
            e->ref = toks_[pos_++].text;
            return e;
        }
        default:
            error(peek().span, "expected a game expression");
            e->kind = GameExpr::Kind::Ref;
            e->ref = "<error>";
            return e;
        }
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;
};

struct ParseResult {
    SourceUnit unit;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

inline ParseResult parse(const std::string& src) {
    ParseResult r;
    auto toks = lex(src, r.diagnostics);
    Parser p(std::move(toks), r.diagnostics);
    r.unit = p.parse_unit();
    return r;
}

// --- printing (canonical layout; parse(print(u)) reproduces the AST) ---

inline void print_expr(std::ostream& os, const GameExpr& e, int parent_prec) {
    auto paren = [&](int prec, auto&& body) {
        bool need = prec < parent_prec;
        if (need) os << "(";
        body();
        if (need) os << ")";
    };
    switch (e.kind) {
    case GameExpr::Kind::Seq:
        paren(1, [&] {
            print_expr(os, *e.left, 1);
            os << " ; ";
            print_expr(os, *e.right, 2);
        });
        break;
    case GameExpr::Kind::Tensor:
        paren(2, [&] {
            print_expr(os, *e.left, 2);
            os << " || ";
            print_expr(os, *e.right, 3);
        });
        break;
    case GameExpr::Kind::Decision:
        os << "decision " << e.type_a.str() << " -> " << e.type_b.str() << " with " << e.sel.str();
        if (e.outcome_t) os << " outcome " << e.outcome_t->str();
        break;
    case GameExpr::Kind::Lift:
        os << "lift " << e.f_name;
        if (!e.g_name.empty()) os << " / " << e.g_name;
        break;
    case GameExpr::Kind::Id: os << "id " << e.type_a.str(); break;
    case GameExpr::Kind::Counit: os << "counit " << e.type_a.str(); break;
    case GameExpr::Kind::Copy: os << "copy " << e.type_a.str(); break;
    case GameExpr::Kind::Delete: os << "delete " << e.type_a.str(); break;
    case GameExpr::Kind::Swap: os << "swap " << e.type_a.str() << " " << e.type_b.str(); break;
    case GameExpr::Kind::Ref: os << e.ref; break;
    }
}

inline std::string print_unit(const SourceUnit& u) {
    std::ostringstream os;
    for (const auto& [kind, idx] : u.order) {
        switch (kind) {
        case SourceUnit::DeclKind::Set: {
            const auto& d = u.sets[idx];
            os << "set " << d.name << " = { ";
            for (size_t i = 0; i < d.labels.size(); ++i) os << (i ? ", " : "") << d.labels[i];
            os << " }\n";
            break;
        }
        case SourceUnit::DeclKind::Outcome: {
            const auto& d = u.outcomes[idx];
            os << "outcome " << d.name << " = ";
            if (!d.product_of.empty()) {
                for (size_t i = 0; i < d.product_of.size(); ++i) os << (i ? "*" : "") << d.product_of[i];
            } else {
                os << "{ ";
                for (size_t i = 0; i < d.values.size(); ++i) os << (i ? ", " : "") << d.values[i].str();
                os << " }";
            }
            os << "\n";
            break;
        }
        case SourceUnit::DeclKind::Fun: {
            const auto& d = u.funs[idx];
            os << "fun " << d.name << " : " << d.dom.str() << " -> " << d.cod.str() << " {\n";
            for (const auto& [a, b] : d.entries) os << "  " << a.str() << " -> " << b.str() << ";\n";
            os << "}\n";
            break;
        }
        case SourceUnit::DeclKind::Selection: {
            const auto& d = u.selections[idx];
            os << "selection " << d.name << " = ";
            if (d.is_builtin) {
                os << d.builtin.str() << "\n";
            } else {
                os << "table " << d.choices_t.str() << " / " << d.outcome_t.str() << " {\n";
                for (const auto& e : d.entries) {
                    os << "  { ";
                    for (size_t i = 0; i < e.continuation.size(); ++i)
                        os << (i ? ", " : "") << e.continuation[i].first.str() << " -> "
                           << e.continuation[i].second.str();
                    os << " } -> { ";
                    for (size_t i = 0; i < e.chosen.size(); ++i) os << (i ? ", " : "") << e.chosen[i].str();
                    os << " };\n";
                }
                os << "}\n";
            }
            break;
        }
        case SourceUnit::DeclKind::Game: {
            const auto& d = u.games[idx];
            os << "game " << d.name << " = ";
            print_expr(os, *d.expr, 1);
            os << "\n";
            break;
        }
        case SourceUnit::DeclKind::Context: {
            const auto& d = u.contexts[idx];
            os << "context " << d.name << " for " << d.game << " = { state: " << d.state.str()
               << ", continuation: { ";
            for (size_t i = 0; i < d.continuation.size(); ++i)
                os << (i ? "; " : "") << d.continuation[i].first.str() << " -> "
                   << d.continuation[i].second.str();
            os << " } }\n";
            break;
        }
        }
    }
    return os.str();
}

// structural AST equality, for the round-trip property
inline bool expr_equal(const GameExpr& a, const GameExpr& b) {
    if (a.kind != b.kind) return false;
    auto type_eq = [](const TypeExpr& x, const TypeExpr& y) { return x.factors == y.factors; };
    switch (a.kind) {
    case GameExpr::Kind::Seq:
    case GameExpr::Kind::Tensor:
        return expr_equal(*a.left, *b.left) && expr_equal(*a.right, *b.right);
    case GameExpr::Kind::Decision:
        return type_eq(a.type_a, b.type_a) && type_eq(a.type_b, b.type_b) &&
               a.sel.kind == b.sel.kind && a.sel.component == b.sel.component && a.sel.name == b.sel.name &&
               a.outcome_t.has_value() == b.outcome_t.has_value() &&
               (!a.outcome_t || type_eq(*a.outcome_t, *b.outcome_t));
    case GameExpr::Kind::Lift: return a.f_name == b.f_name && a.g_name == b.g_name;
    case GameExpr::Kind::Id:
    case GameExpr::Kind::Counit:
    case GameExpr::Kind::Copy:
    case GameExpr::Kind::Delete:
        return type_eq(a.type_a, b.type_a);
    case GameExpr::Kind::Swap: return type_eq(a.type_a, b.type_a) && type_eq(a.type_b, b.type_b);
    case GameExpr::Kind::Ref: return a.ref == b.ref;
    }
    return false;
}

} // namespace og::lang

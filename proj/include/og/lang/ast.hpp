#pragma once

// Abstract syntax for the game-description language, plus diagnostics.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "og/finite.hpp"
#include "og/lens.hpp"

namespace og::lang {

struct SrcSpan {
    int line = 0;
    int col = 0;
    int len = 0;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    SrcSpan span;
    std::string message;
    std::string expected; // boundary mismatches carry both sides
    std::string found;

    std::string str() const {
        std::string s = std::to_string(span.line) + ":" + std::to_string(span.col) + ": ";
        s += severity == Severity::Error ? "error: " : "warning: ";
        s += message;
        if (!expected.empty() || !found.empty())
            s += " (expected " + expected + ", found " + found + ")";
        return s;
    }
};

// A product of named carriers; the empty product is the unit "1".
struct TypeExpr {
    std::vector<std::string> factors;
    SrcSpan span;

    std::string str() const {
        if (factors.empty()) return "1";
        std::string s;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) s += "*";
            s += factors[i];
        }
        return s;
    }
};

struct RawValue {
    enum class Kind { Ident, Num, Tuple, Star };
    Kind kind = Kind::Star;
    std::string ident;
    Rat num;
    std::vector<RawValue> tuple;
    SrcSpan span;

    std::string str() const {
        switch (kind) {
        case Kind::Ident: return ident;
        case Kind::Num: return to_string(num);
        case Kind::Star: return "*";
        case Kind::Tuple: {
            std::string s = "(";
            for (size_t i = 0; i < tuple.size(); ++i) {
                if (i) s += ",";
                s += tuple[i].str();
            }
            return s + ")";
        }
        }
        return "?";
    }
};

struct SelRef {
    enum class Kind { Argmax, Fix, AntiFix, Named };
    Kind kind = Kind::Argmax;
    std::optional<int> component;
    std::string name;
    SrcSpan span;

    std::string str() const {
        switch (kind) {
        case Kind::Argmax:
            return component ? "argmax[" + std::to_string(*component) + "]" : "argmax";
        case Kind::Fix: return "fix";
        case Kind::AntiFix: return "antifix";
        case Kind::Named: return name;
        }
        return "?";
    }
};

struct GameExpr;
using ExprPtr = std::shared_ptr<GameExpr>;

struct GameExpr {
    enum class Kind { Decision, Lift, Id, Counit, Copy, Delete, Swap, Seq, Tensor, Ref };
    Kind kind = Kind::Ref;
    SrcSpan span;

    TypeExpr type_a;                   // Decision obs; Id/Counit/Copy/Delete carrier; Swap left
    TypeExpr type_b;                   // Decision moves; Swap right
    SelRef sel;                        // Decision
    std::optional<TypeExpr> outcome_t; // Decision annotation
    std::string f_name, g_name;        // Lift (empty g = inferred identity backward)
    ExprPtr left, right;               // Seq / Tensor
    std::string ref;                   // Ref

    // assigned by the typechecker
    Boundary dom_b, cod_b;
};

struct SetDecl {
    std::string name;
    std::vector<std::string> labels;
    SrcSpan span;
};

struct OutcomeDecl {
    std::string name;
    std::vector<RawValue> values;        // explicit value list, or
    std::vector<std::string> product_of; // product of previously declared carriers
    SrcSpan span;
};

struct FunDecl {
    std::string name;
    TypeExpr dom, cod;
    std::vector<std::pair<RawValue, RawValue>> entries;
    SrcSpan span;
};

struct SelectionDecl {
    std::string name;
    bool is_builtin = true;
    SelRef builtin;
    // table form
    TypeExpr choices_t, outcome_t;
    struct Entry {
        std::vector<std::pair<RawValue, RawValue>> continuation;
        std::vector<RawValue> chosen;
    };
    std::vector<Entry> entries;
    SrcSpan span;
};

struct GameDecl {
    std::string name;
    ExprPtr expr;
    SrcSpan span;
};

struct ContextDecl {
    std::string name;
    std::string game;
    RawValue state;
    std::vector<std::pair<RawValue, RawValue>> continuation;
    SrcSpan span;
};

struct SourceUnit {
    std::vector<SetDecl> sets;
    std::vector<OutcomeDecl> outcomes;
    std::vector<FunDecl> funs;
    std::vector<SelectionDecl> selections;
    std::vector<GameDecl> games;
    std::vector<ContextDecl> contexts;

    enum class DeclKind { Set, Outcome, Fun, Selection, Game, Context };
    std::vector<std::pair<DeclKind, size_t>> order; // declaration order for printing

    bool empty() const {
        return sets.empty() && outcomes.empty() && funs.empty() && selections.empty() && games.empty() &&
               contexts.empty();
    }
};

} // namespace og::lang

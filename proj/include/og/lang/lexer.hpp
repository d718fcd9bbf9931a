#pragma once

#include <string>
#include <vector>

#include "og/lang/ast.hpp"

namespace og::lang {

enum class Tok {
    Ident, Int,
    KwSet, KwOutcome, KwFun, KwSelection, KwGame, KwContext,
    KwDecision, KwWith, KwLift, KwId, KwCounit, KwCopy, KwDelete, KwSwap,
    KwArgmax, KwFix, KwAntifix, KwTable, KwFor,
    LBrace, RBrace, LParen, RParen, LBracket, RBracket,
    Comma, Semi, Colon, Star, Slash, Eq, Minus, Arrow, Par,
    Eof, Bad,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    long long num = 0;
    SrcSpan span;
};

inline std::vector<Token> lex(const std::string& src, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string text, int l, int c) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.span = {l, c, static_cast<int>(t.text.size())};
        out.push_back(std::move(t));
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++col;
            ++i;
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        auto two = [&](char a, char b) { return ch == a && i + 1 < src.size() && src[i + 1] == b; };
        if (two('-', '>')) {
            push(Tok::Arrow, "->", l, c);
            i += 2;
            col += 2;
            continue;
        }
        if (two('|', '|')) {
            push(Tok::Par, "||", l, c);
            i += 2;
            col += 2;
            continue;
        }
        if (isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && isdigit(static_cast<unsigned char>(src[j]))) ++j;
            std::string text = src.substr(i, j - i);
            Token t;
            t.kind = Tok::Int;
            t.text = text;
            t.num = std::stoll(text);
            t.span = {l, c, static_cast<int>(text.size())};
            out.push_back(std::move(t));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string w = src.substr(i, j - i);
            Tok k = Tok::Ident;
            if (w == "set") k = Tok::KwSet;
            else if (w == "outcome") k = Tok::KwOutcome;
            else if (w == "fun") k = Tok::KwFun;
            else if (w == "selection") k = Tok::KwSelection;
            else if (w == "game") k = Tok::KwGame;
            else if (w == "context") k = Tok::KwContext;
            else if (w == "decision") k = Tok::KwDecision;
            else if (w == "with") k = Tok::KwWith;
            else if (w == "lift") k = Tok::KwLift;
            else if (w == "id") k = Tok::KwId;
            else if (w == "counit") k = Tok::KwCounit;
            else if (w == "copy") k = Tok::KwCopy;
            else if (w == "delete") k = Tok::KwDelete;
            else if (w == "swap") k = Tok::KwSwap;
            else if (w == "argmax") k = Tok::KwArgmax;
            else if (w == "fix") k = Tok::KwFix;
            else if (w == "antifix") k = Tok::KwAntifix;
            else if (w == "table") k = Tok::KwTable;
            else if (w == "for") k = Tok::KwFor;
            push(k, w, l, c);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k = Tok::Bad;
        switch (ch) {
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '[': k = Tok::LBracket; break;
        case ']': k = Tok::RBracket; break;
        case ',': k = Tok::Comma; break;
        case ';': k = Tok::Semi; break;
        case ':': k = Tok::Colon; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '=': k = Tok::Eq; break;
        case '-': k = Tok::Minus; break;
        default: break;
        }
        if (k == Tok::Bad)
            diags.push_back({Diagnostic::Severity::Error, {l, c, 1},
                             std::string("unexpected character '") + ch + "'", "", ""});
        else
            push(k, std::string(1, ch), l, c);
        ++i;
        ++col;
    }
    Token eof;
    eof.kind = Tok::Eof;
    eof.span = {line, col, 0};
    out.push_back(eof);
    return out;
}

} // namespace og::lang

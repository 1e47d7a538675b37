#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "context.hpp"
#include "term.hpp"

namespace goim {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at)
        : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}
};

// Concrete syntax:
//   term   ::= '\' ident '.' term | app
//   app    ::= post post*                       (left-associative)
//   post   ::= atom ('[' ident '<-' term ']')*
//   atom   ::= ident | '(' term ')'
//   ident  ::= [A-Za-z_][A-Za-z0-9_']*
struct Parser {
    const std::string& src;
    size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) pos++;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos >= src.size() || src[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        pos++;
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    bool peek_ident() {
        skip_ws();
        return pos < src.size() && ident_start(src[pos]);
    }

    std::string ident() {
        skip_ws();
        if (pos >= src.size() || !ident_start(src[pos]))
            throw ParseError("expected identifier", pos);
        size_t start = pos;
        while (pos < src.size() && ident_char(src[pos])) pos++;
        return src.substr(start, pos - start);
    }

    Term term() {
        skip_ws();
        if (pos < src.size() && src[pos] == '\\') {
            pos++;
            VarName x = intern(ident());
            expect('.');
            return mk_abs(x, term());
        }
        return app();
    }

    Term app() {
        Term t = post();
        while (true) {
            skip_ws();
            if (pos >= src.size()) break;
            char c = src[pos];
            if (c == ')' || c == ']') break;
            if (c == '\\' || c == '(' || ident_start(c)) {
                t = mk_app(t, post());
                continue;
            }
            break;
        }
        return t;
    }

    Term post() {
        Term t = atom();
        while (peek_is('[')) {
            pos++;
            VarName x = intern(ident());
            skip_ws();
            if (pos + 1 >= src.size() || src[pos] != '<' || src[pos + 1] != '-')
                throw ParseError("expected '<-'", pos);
            pos += 2;
            Term u = term();
            expect(']');
            t = mk_sub(t, x, u);
        }
        return t;
    }

    Term atom() {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unexpected end of input", pos);
        char c = src[pos];
        if (c == '(') {
            pos++;
            Term t = term();
            expect(')');
            return t;
        }
        if (c == '\\') return term();
        if (ident_start(c)) return mk_var(intern(ident()));
        throw ParseError("unexpected character", pos);
    }
};

// Parses a term (explicit substitutions allowed in the grammar).
inline Term parse_term(const std::string& src) {
    Parser p(src);
    Term t = p.term();
    p.skip_ws();
    if (p.pos != src.size()) throw ParseError("trailing input", p.pos);
    return t;
}

// Machine-input parser: explicit substitutions are rejected, the result is a
// pure term.
inline Term parse(const std::string& src) {
    Term t = parse_term(src);
    if (!is_pure(t))
        throw ParseError("explicit substitutions are not allowed in initial terms", 0);
    return t;
}

// ---- printing ----

namespace detail {

inline void print_term_rec(const Term& t, std::string& out, int prec) {
    // prec: 0 = top, 1 = application position (function side), 2 = atom
    switch (t->kind) {
        case TermNode::Var:
            out += label_of(t->var);
            return;
        case TermNode::Abs: {
            bool paren = prec > 0;
            if (paren) out += "(";
            out += "\\" + label_of(t->var) + ". ";
            print_term_rec(t->a, out, 0);
            if (paren) out += ")";
            return;
        }
        case TermNode::App: {
            bool paren = prec > 1;
            if (paren) out += "(";
            print_term_rec(t->a, out, 1);
            out += " ";
            print_term_rec(t->b, out, 2);
            if (paren) out += ")";
            return;
        }
        case TermNode::Sub: {
            bool paren = prec > 1;
            if (paren) out += "(";
            print_term_rec(t->a, out, 2);
            out += "[" + label_of(t->var) + " <- ";
            print_term_rec(t->b, out, 0);
            out += "]";
            if (paren) out += ")";
            return;
        }
    }
}

} // namespace detail

inline std::string show_term(const Term& t) {
    std::string out;
    detail::print_term_rec(t, out, 0);
    return out;
}

inline std::string show_ctx(const EvalCtx& e) {
    switch (e->kind) {
        case CtxNode::Hole: return "<>";
        case CtxNode::AppLeft: {
            std::string inner = show_ctx(e->inner);
            std::string arg;
            detail::print_term_rec(e->t, arg, 2);
            return "(" + inner + " " + arg + ")";
        }
        case CtxNode::SubOuter: {
            return show_ctx(e->inner) + "[" + label_of(e->var) + " <- " + show_term(e->t) + "]";
        }
        case CtxNode::Hered: {
            // E'<x>[x <- E]: print E' with its hole shown as the variable
            std::string ep = show_ctx(e->eprime);
            auto at = ep.find("<>");
            if (at != std::string::npos) ep.replace(at, 2, label_of(e->var));
            return ep + "[" + label_of(e->var) + " <- " + show_ctx(e->inner) + "]";
        }
    }
    return "?";
}

} // namespace goim

#pragma once

#include <memory>
#include <stdexcept>

#include "term.hpp"

namespace goim {

// Evaluation contexts:
//   E ::= <> | E t | E[x <- t] | E'<x>[x <- E]
// The hereditary form stores E' with its hole already (conceptually) filled
// by x; the live hole of the whole context is the hole of the inner E.
struct CtxNode;
using EvalCtx = std::shared_ptr<const CtxNode>;

struct CtxNode {
    enum Kind { Hole, AppLeft, SubOuter, Hered };
    Kind kind;
    EvalCtx inner;   // AppLeft/SubOuter: E; Hered: the E that keeps the live hole
    VarName var{};   // SubOuter/Hered: the bound variable
    Term t;          // AppLeft: the argument; SubOuter: the bound term
    EvalCtx eprime;  // Hered: E' (its hole is filled by var)
};

inline EvalCtx ctx_hole() {
    static EvalCtx h = std::make_shared<CtxNode>(CtxNode{CtxNode::Hole, nullptr, {}, nullptr, nullptr});
    return h;
}
inline EvalCtx ctx_app_left(EvalCtx e, Term arg) {
    return std::make_shared<CtxNode>(CtxNode{CtxNode::AppLeft, std::move(e), {}, std::move(arg), nullptr});
}
inline EvalCtx ctx_sub_outer(EvalCtx e, VarName x, Term bound) {
    return std::make_shared<CtxNode>(CtxNode{CtxNode::SubOuter, std::move(e), x, std::move(bound), nullptr});
}
inline EvalCtx ctx_hered(EvalCtx eprime, VarName x, EvalCtx e) {
    return std::make_shared<CtxNode>(CtxNode{CtxNode::Hered, std::move(e), x, nullptr, std::move(eprime)});
}

// A substitution context is built from Hole and SubOuter only.
inline bool is_subst_ctx(const EvalCtx& e) {
    if (e->kind == CtxNode::Hole) return true;
    if (e->kind == CtxNode::SubOuter) return is_subst_ctx(e->inner);
    return false;
}

// FV_M:
//   FV_M(<>)                = M
//   FV_M(E t)               = FV_M(E) + FV(t)
//   FV_M(E[x <- t])         = (FV_M(E)) \ x + FV(t)
//   FV_M(E'<x>[x <- E])     = (FV_[x](E')) \ x + FV_M(E)
inline VarMultiset fv_ctx(const EvalCtx& e, const VarMultiset& m) {
    switch (e->kind) {
        case CtxNode::Hole: return m;
        case CtxNode::AppLeft: return fv_ctx(e->inner, m) + fv(e->t);
        case CtxNode::SubOuter: return fv_ctx(e->inner, m).remove_all(e->var) + fv(e->t);
        case CtxNode::Hered:
            return fv_ctx(e->eprime, VarMultiset::singleton(e->var)).remove_all(e->var) +
                   fv_ctx(e->inner, m);
    }
    throw std::logic_error("fv_ctx: bad context");
}

inline Term plug_term(const EvalCtx& e, const Term& t) {
    switch (e->kind) {
        case CtxNode::Hole: return t;
        case CtxNode::AppLeft: return mk_app(plug_term(e->inner, t), e->t);
        case CtxNode::SubOuter: return mk_sub(plug_term(e->inner, t), e->var, e->t);
        case CtxNode::Hered:
            return mk_sub(plug_term(e->eprime, mk_var(e->var)), e->var, plug_term(e->inner, t));
    }
    throw std::logic_error("plug_term: bad context");
}

// E<E2>: replaces the live hole of E with E2.
inline EvalCtx plug_ctx(const EvalCtx& e, const EvalCtx& e2) {
    switch (e->kind) {
        case CtxNode::Hole: return e2;
        case CtxNode::AppLeft: return ctx_app_left(plug_ctx(e->inner, e2), e->t);
        case CtxNode::SubOuter: return ctx_sub_outer(plug_ctx(e->inner, e2), e->var, e->t);
        case CtxNode::Hered: return ctx_hered(e->eprime, e->var, plug_ctx(e->inner, e2));
    }
    throw std::logic_error("plug_ctx: bad context");
}

inline uint64_t ctx_depth(const EvalCtx& e) {
    switch (e->kind) {
        case CtxNode::Hole: return 0;
        case CtxNode::AppLeft:
        case CtxNode::SubOuter: return 1 + ctx_depth(e->inner);
        case CtxNode::Hered: return 1 + ctx_depth(e->inner);
    }
    return 0;
}

// Structural equality (names compared exactly).
inline bool term_equal(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermNode::Var: return a->var == b->var;
        case TermNode::Abs: return a->var == b->var && term_equal(a->a, b->a);
        case TermNode::App: return term_equal(a->a, b->a) && term_equal(a->b, b->b);
        case TermNode::Sub:
            return a->var == b->var && term_equal(a->a, b->a) && term_equal(a->b, b->b);
    }
    return false;
}

inline bool ctx_equal(const EvalCtx& a, const EvalCtx& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case CtxNode::Hole: return true;
        case CtxNode::AppLeft: return term_equal(a->t, b->t) && ctx_equal(a->inner, b->inner);
        case CtxNode::SubOuter:
            return a->var == b->var && term_equal(a->t, b->t) && ctx_equal(a->inner, b->inner);
        case CtxNode::Hered:
            return a->var == b->var && ctx_equal(a->eprime, b->eprime) &&
                   ctx_equal(a->inner, b->inner);
    }
    return false;
}

} // namespace goim

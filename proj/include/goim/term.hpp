#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "multiset.hpp"
#include "names.hpp"

namespace goim {

// Terms with explicit substitutions:
//   t ::= x | \x. t | t t | t[x <- t]
// Nodes are immutable and shared freely.
struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    enum Kind { Var, Abs, App, Sub };
    Kind kind;
    VarName var{};  // Var: the variable; Abs/Sub: the bound variable
    Term a;         // Abs: body; App: function; Sub: body
    Term b;         // App: argument; Sub: bound term
};

inline Term mk_var(VarName x) { return std::make_shared<TermNode>(TermNode{TermNode::Var, x, nullptr, nullptr}); }
inline Term mk_abs(VarName x, Term body) { return std::make_shared<TermNode>(TermNode{TermNode::Abs, x, std::move(body), nullptr}); }
inline Term mk_app(Term f, Term u) { return std::make_shared<TermNode>(TermNode{TermNode::App, {}, std::move(f), std::move(u)}); }
inline Term mk_sub(Term body, VarName x, Term bound) { return std::make_shared<TermNode>(TermNode{TermNode::Sub, x, std::move(body), std::move(bound)}); }

inline bool is_pure(const Term& t) {
    switch (t->kind) {
        case TermNode::Var: return true;
        case TermNode::Abs: return is_pure(t->a);
        case TermNode::App: return is_pure(t->a) && is_pure(t->b);
        case TermNode::Sub: return false;
    }
    return false;
}

inline bool is_value(const Term& t) { return t->kind == TermNode::Abs; }

// Free-variable multiset:
//   FV(x) = [x]
//   FV(\x.t) = FV(t) \ x
//   FV(t u) = FV(t) + FV(u)
//   FV(t[x <- u]) = (FV(t) \ x) + FV(u)
inline VarMultiset fv(const Term& t) {
    switch (t->kind) {
        case TermNode::Var: return VarMultiset::singleton(t->var);
        case TermNode::Abs: return fv(t->a).remove_all(t->var);
        case TermNode::App: return fv(t->a) + fv(t->b);
        case TermNode::Sub: return fv(t->a).remove_all(t->var) + fv(t->b);
    }
    return {};
}

// |x| = 1, |\x.t| = |t|+1, |t u| = |t|+|u|+1, |t[x<-u]| = |t|+|u|+1
inline uint64_t term_size(const Term& t) {
    switch (t->kind) {
        case TermNode::Var: return 1;
        case TermNode::Abs: return term_size(t->a) + 1;
        case TermNode::App:
        case TermNode::Sub: return term_size(t->a) + term_size(t->b) + 1;
    }
    return 0;
}

namespace detail {

inline void collect_bound(const Term& t, std::vector<VarName>& out) {
    switch (t->kind) {
        case TermNode::Var: return;
        case TermNode::Abs:
            out.push_back(t->var);
            collect_bound(t->a, out);
            return;
        case TermNode::App:
            collect_bound(t->a, out);
            collect_bound(t->b, out);
            return;
        case TermNode::Sub:
            out.push_back(t->var);
            collect_bound(t->a, out);
            collect_bound(t->b, out);
            return;
    }
}

} // namespace detail

// Closed: FV(t) empty. Well-named: every variable bound at most once and no
// bound variable also occurs free.
inline bool is_closed_well_named(const Term& t) {
    VarMultiset free = fv(t);
    if (!free.empty()) return false;
    std::vector<VarName> bound;
    detail::collect_bound(t, bound);
    std::unordered_set<VarName> seen;
    for (VarName x : bound) {
        if (!seen.insert(x).second) return false;
        if (free.contains(x)) return false;
    }
    return true;
}

inline bool is_well_named(const Term& t) {
    VarMultiset free = fv(t);
    std::vector<VarName> bound;
    detail::collect_bound(t, bound);
    std::unordered_set<VarName> seen;
    for (VarName x : bound) {
        if (!seen.insert(x).second) return false;
        if (free.contains(x)) return false;
    }
    return true;
}

namespace detail {

inline Term rename_fresh_rec(const Term& t, NameSupply& supply,
                             std::vector<std::pair<VarName, VarName>>& env) {
    switch (t->kind) {
        case TermNode::Var: {
            for (auto it = env.rbegin(); it != env.rend(); ++it)
                if (it->first == t->var) return mk_var(it->second);
            return t;
        }
        case TermNode::Abs: {
            VarName nx = supply.fresh(label_of(t->var));
            env.push_back({t->var, nx});
            Term body = rename_fresh_rec(t->a, supply, env);
            env.pop_back();
            return mk_abs(nx, body);
        }
        case TermNode::App: {
            Term f = rename_fresh_rec(t->a, supply, env);
            Term u = rename_fresh_rec(t->b, supply, env);
            return mk_app(f, u);
        }
        case TermNode::Sub: {
            Term bound = rename_fresh_rec(t->b, supply, env);
            VarName nx = supply.fresh(label_of(t->var));
            env.push_back({t->var, nx});
            Term body = rename_fresh_rec(t->a, supply, env);
            env.pop_back();
            return mk_sub(body, nx, bound);
        }
    }
    throw std::logic_error("rename_fresh: bad term");
}

} // namespace detail

// Copy of a value with all bound variables replaced by distinct fresh names.
inline Term rename_fresh(const Term& v, NameSupply& supply) {
    std::vector<std::pair<VarName, VarName>> env;
    return detail::rename_fresh_rec(v, supply, env);
}

namespace detail {

inline bool alpha_eq_rec(const Term& s, const Term& t,
                         std::vector<std::pair<VarName, VarName>>& env) {
    if (s->kind != t->kind) return false;
    switch (s->kind) {
        case TermNode::Var: {
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == s->var || it->second == t->var)
                    return it->first == s->var && it->second == t->var;
            }
            return s->var == t->var;
        }
        case TermNode::Abs: {
            env.push_back({s->var, t->var});
            bool ok = alpha_eq_rec(s->a, t->a, env);
            env.pop_back();
            return ok;
        }
        case TermNode::App:
            return alpha_eq_rec(s->a, t->a, env) && alpha_eq_rec(s->b, t->b, env);
        case TermNode::Sub: {
            if (!alpha_eq_rec(s->b, t->b, env)) return false;
            env.push_back({s->var, t->var});
            bool ok = alpha_eq_rec(s->a, t->a, env);
            env.pop_back();
            return ok;
        }
    }
    return false;
}

} // namespace detail

// Used by tests and the reference checks only; the machines never compare
// terms up to alpha.
inline bool alpha_equal(const Term& s, const Term& t) {
    std::vector<std::pair<VarName, VarName>> env;
    return detail::alpha_eq_rec(s, t, env);
}

namespace detail {

inline bool renaming_eq_rec(const Term& s, const Term& t,
                            std::vector<std::pair<VarName, VarName>>& env,
                            std::unordered_map<uint32_t, VarName>& fwd,
                            std::unordered_map<uint32_t, VarName>& bwd) {
    if (s->kind != t->kind) return false;
    switch (s->kind) {
        case TermNode::Var: {
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == s->var || it->second == t->var)
                    return it->first == s->var && it->second == t->var;
            }
            auto f = fwd.find(s->var.id);
            auto g = bwd.find(t->var.id);
            if (f == fwd.end() && g == bwd.end()) {
                fwd.emplace(s->var.id, t->var);
                bwd.emplace(t->var.id, s->var);
                return true;
            }
            return f != fwd.end() && g != bwd.end() && f->second == t->var && g->second == s->var;
        }
        case TermNode::Abs: {
            env.push_back({s->var, t->var});
            bool ok = renaming_eq_rec(s->a, t->a, env, fwd, bwd);
            env.pop_back();
            return ok;
        }
        case TermNode::App:
            return renaming_eq_rec(s->a, t->a, env, fwd, bwd) &&
                   renaming_eq_rec(s->b, t->b, env, fwd, bwd);
        case TermNode::Sub: {
            if (!renaming_eq_rec(s->b, t->b, env, fwd, bwd)) return false;
            env.push_back({s->var, t->var});
            bool ok = renaming_eq_rec(s->a, t->a, env, fwd, bwd);
            env.pop_back();
            return ok;
        }
    }
    return false;
}

} // namespace detail

// Equality up to a bijective renaming of all variables, free ones included.
// Test-side helper for the reachability invariant, where copies rename
// binders that lie above the sub-term being compared.
inline bool equal_up_to_renaming(const Term& s, const Term& t) {
    std::vector<std::pair<VarName, VarName>> env;
    std::unordered_map<uint32_t, VarName> fwd, bwd;
    return detail::renaming_eq_rec(s, t, env, fwd, bwd);
}

inline void for_each_subterm(const Term& t, const std::function<void(const Term&)>& f) {
    f(t);
    switch (t->kind) {
        case TermNode::Var: return;
        case TermNode::Abs: for_each_subterm(t->a, f); return;
        case TermNode::App:
        case TermNode::Sub:
            for_each_subterm(t->a, f);
            for_each_subterm(t->b, f);
            return;
    }
}

} // namespace goim

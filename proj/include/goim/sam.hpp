#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "context.hpp"
#include "syntax.hpp"
#include "term.hpp"

namespace goim {

enum class Label : uint8_t { B, S, O };

inline char label_char(Label l) { return l == Label::B ? 'b' : l == Label::S ? 's' : 'o'; }

enum class SamRule : uint8_t { O1, O2, O3, B, SPos, SOne };

inline const char* sam_rule_name(SamRule r) {
    switch (r) {
        case SamRule::O1: return "O1";
        case SamRule::O2: return "O2";
        case SamRule::O3: return "O3";
        case SamRule::B: return "B";
        case SamRule::SPos: return "SPos";
        case SamRule::SOne: return "SOne";
    }
    return "?";
}

inline Label sam_rule_label(SamRule r) {
    switch (r) {
        case SamRule::B: return Label::B;
        case SamRule::SPos:
        case SamRule::SOne: return Label::S;
        default: return Label::O;
    }
}

enum class Phase : uint8_t { TermPhase, CtxtPhase };

struct Configuration {
    Term focus;
    EvalCtx ctx;
    Phase phase = Phase::TermPhase;

    Term plugging() const { return plug_term(ctx, focus); }
    std::string str() const {
        return std::string("(") + show_term(focus) + ", " + show_ctx(ctx) + ")_" +
               (phase == Phase::TermPhase ? "term" : "ctxt");
    }
};

struct RunStats {
    uint64_t b = 0, s = 0, o = 0;
    uint64_t per_rule[6] = {0, 0, 0, 0, 0, 0};

    uint64_t total() const { return b + s + o; }
    void record(SamRule r) {
        per_rule[static_cast<int>(r)]++;
        switch (sam_rule_label(r)) {
            case Label::B: b++; break;
            case Label::S: s++; break;
            case Label::O: o++; break;
        }
    }
    void record(Label l) {
        switch (l) {
            case Label::B: b++; break;
            case Label::S: s++; break;
            case Label::O: o++; break;
        }
    }
};

struct SamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamStep {
    Configuration next;
    Label label;
    SamRule rule;
};

namespace detail {

inline EvalCtx wrap_frame(const CtxNode* f, EvalCtx acc) {
    switch (f->kind) {
        case CtxNode::AppLeft: return ctx_app_left(std::move(acc), f->t);
        case CtxNode::SubOuter: return ctx_sub_outer(std::move(acc), f->var, f->t);
        case CtxNode::Hered: return ctx_hered(f->eprime, f->var, std::move(acc));
        case CtxNode::Hole: break;
    }
    throw std::logic_error("wrap_frame: hole");
}

// Frames of the live spine, outermost first; the hole sits below the last.
inline std::vector<const CtxNode*> live_spine(const EvalCtx& e) {
    std::vector<const CtxNode*> spine;
    const CtxNode* cur = e.get();
    while (cur->kind != CtxNode::Hole) {
        spine.push_back(cur);
        cur = cur->inner.get();
    }
    return spine;
}

inline EvalCtx rebuild_above(const std::vector<const CtxNode*>& spine, size_t upto, EvalCtx acc) {
    for (size_t j = upto; j-- > 0;) acc = wrap_frame(spine[j], std::move(acc));
    return acc;
}

} // namespace detail

// One transition of the storeless machine. Returns nothing iff the
// configuration is final, i.e. a context configuration (v, A)_ctxt.
inline std::optional<SamStep> sam_step(const Configuration& c, NameSupply& supply) {
    using detail::live_spine;
    using detail::rebuild_above;

    if (c.phase == Phase::TermPhase) {
        if (!is_pure(c.focus))
            throw SamError("malformed configuration: term-phase focus is not pure");
        switch (c.focus->kind) {
            case TermNode::App: {
                // (t u, E) -> (t, E< <> u >)
                EvalCtx ctx = plug_ctx(c.ctx, ctx_app_left(ctx_hole(), c.focus->b));
                return SamStep{{c.focus->a, ctx, Phase::TermPhase}, Label::O, SamRule::O1};
            }
            case TermNode::Var: {
                // (x, E1<E2[x <- t]>) -> (t, E1<E2<x>[x <- <>]>)
                auto spine = live_spine(c.ctx);
                size_t j = spine.size();
                bool found = false;
                while (j > 0) {
                    j--;
                    if (spine[j]->kind == CtxNode::SubOuter && spine[j]->var == c.focus->var) {
                        found = true;
                        break;
                    }
                    if (spine[j]->kind == CtxNode::Hered && spine[j]->var == c.focus->var)
                        throw SamError("malformed configuration: variable focused inside its own binding");
                }
                if (!found)
                    throw SamError("malformed configuration: unbound variable " +
                                   label_of(c.focus->var));
                EvalCtx e2 = ctx_hole();
                for (size_t k = spine.size(); k-- > j + 1;)
                    e2 = detail::wrap_frame(spine[k], std::move(e2));
                Term body = spine[j]->t;
                EvalCtx acc = ctx_hered(e2, c.focus->var, ctx_hole());
                acc = rebuild_above(spine, j, std::move(acc));
                return SamStep{{body, acc, Phase::TermPhase}, Label::O, SamRule::O2};
            }
            case TermNode::Abs:
                // (v, E)_term -> (v, E)_ctxt
                return SamStep{{c.focus, c.ctx, Phase::CtxtPhase}, Label::O, SamRule::O3};
            case TermNode::Sub:
                throw SamError("malformed configuration: explicit substitution in focus");
        }
        throw SamError("malformed configuration");
    }

    // Context phase: the focus must be a pure value.
    if (c.focus->kind != TermNode::Abs || !is_pure(c.focus))
        throw SamError("malformed configuration: context-phase focus is not a pure value");

    auto spine = detail::live_spine(c.ctx);
    // Collect the substitution context A around the hole.
    size_t j = spine.size();
    while (j > 0 && spine[j - 1]->kind == CtxNode::SubOuter) j--;
    if (j == 0) return std::nullopt; // (v, A)_ctxt is final

    const CtxNode* f = spine[j - 1];
    auto wrap_a_run = [&](EvalCtx acc) {
        for (size_t k = spine.size(); k-- > j;)
            acc = ctx_sub_outer(std::move(acc), spine[k]->var, spine[k]->t);
        return acc;
    };

    if (f->kind == CtxNode::AppLeft) {
        // (\x.t, E<A u>) ->b (t, E<A< <>[x <- u] >>)
        VarName x = c.focus->var;
        EvalCtx acc = ctx_sub_outer(ctx_hole(), x, f->t);
        acc = wrap_a_run(std::move(acc));
        acc = rebuild_above(spine, j - 1, std::move(acc));
        return SamStep{{c.focus->a, acc, Phase::TermPhase}, Label::B, SamRule::B};
    }

    if (f->kind == CtxNode::Hered) {
        // (v, E1<E2<x>[x <- A]>) ->s ...
        VarName x = f->var;
        bool keep = fv_ctx(f->eprime, VarMultiset{}).contains(x);
        if (keep) {
            // copy of the value goes to the occurrence, the original stays bound
            Term copy = rename_fresh(c.focus, supply);
            EvalCtx acc = ctx_sub_outer(f->eprime, x, c.focus);
            acc = wrap_a_run(std::move(acc));
            acc = rebuild_above(spine, j - 1, std::move(acc));
            return SamStep{{copy, acc, Phase::CtxtPhase}, Label::S, SamRule::SPos};
        }
        EvalCtx acc = wrap_a_run(f->eprime);
        acc = rebuild_above(spine, j - 1, std::move(acc));
        return SamStep{{c.focus, acc, Phase::CtxtPhase}, Label::S, SamRule::SOne};
    }

    throw SamError("malformed configuration: context phase with no matching rule");
}

struct SamTraceEntry {
    SamRule rule;
    Label label;
    Configuration after;
};

struct SamResult {
    bool halted = false; // false = fuel exhausted
    Configuration final_config;
    RunStats stats;
    uint64_t steps = 0;
    std::vector<SamTraceEntry> trace; // filled only when requested
};

inline Configuration initial_configuration(const Term& t0) {
    return {t0, ctx_hole(), Phase::TermPhase};
}

inline SamResult sam_run(const Term& t0, uint64_t fuel, NameSupply& supply,
                         bool keep_trace = false) {
    if (!is_pure(t0)) throw SamError("initial term must be pure");
    if (!is_closed_well_named(t0)) throw SamError("initial term must be closed and well-named");
    SamResult r;
    Configuration c = initial_configuration(t0);
    while (r.steps < fuel) {
        auto step = sam_step(c, supply);
        if (!step) {
            r.halted = true;
            break;
        }
        c = step->next;
        r.stats.record(step->rule);
        r.steps++;
        if (keep_trace) r.trace.push_back({step->rule, step->label, c});
    }
    r.final_config = c;
    return r;
}

// |e|_s <= |e|_b  and  |e|_o <= |t0| * (5|e|_b + 2) + (3|e|_b + 1)
inline bool sam_check_bounds(const RunStats& st, uint64_t input_size) {
    if (st.s > st.b) return false;
    return st.o <= input_size * (5 * st.b + 2) + (3 * st.b + 1);
}

} // namespace goim

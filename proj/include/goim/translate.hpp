#pragma once

// Call-by-value style translation of terms and evaluation contexts into
// well-boxed graphs. Values, and only values, become boxes.
//
// Orientation conventions (the token enters at the conclusion moving up):
//
//   x:          ax node with two conclusions, one is the term's conclusion,
//               the other is the free occurrence edge of x.
//   \x.t:       box around t's graph, with con_k collecting the k occurrence
//               edges of x; par joins (left) the con output and (right) t's
//               conclusion; the par conclusion feeds the bang principal door.
//               Every other free edge exits through its own whynot door.
//   t u:        fresh ax gives the application's conclusion and a result
//               edge; tensor pairs (left) u's conclusion with (right) the
//               result edge; the tensor conclusion passes a der node and is
//               cut against t's conclusion.
//   t[x <- u]:  con_k collects the x occurrences of t and is cut against u's
//               conclusion.
//
// With these conventions the token needs exactly 4 passes to simulate an
// application split, 3 to simulate a variable lookup and 1 to simulate the
// phase flip on a value, and every beta/substitution rewrite sequence lands
// on the translation of the successor configuration.

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "context.hpp"
#include "graph.hpp"
#include "term.hpp"

namespace goim {

struct TranslateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Open edges of a translated term: one conclusion plus one edge per free
// variable occurrence (in left-to-right syntactic order).
struct OpenGraph {
    EdgeId conclusion = kNoEdge;
    std::map<VarName, std::vector<EdgeId>> free;
};

// A translated evaluation context additionally exposes the hole interface:
// the edge that will receive the plugged term's conclusion and, per variable,
// the edges that will receive its free-occurrence edges.
struct CtxGraph {
    EdgeId conclusion = kNoEdge;
    std::map<VarName, std::vector<EdgeId>> free;
    EdgeId hole_conclusion = kNoEdge;
    std::map<VarName, std::vector<EdgeId>> hole_free;
};

namespace detail_tr {

struct Builder {
    Graph& g;
    BoxId level = kTopLevel; // box under construction

    NodeId node(NodeKind k) { return g.add_node(k, level); }

    EdgeId edge() { return g.add_edge(); }

    void annotate(EdgeId e, VarName x) {
        g.edge(e).ann = x;
        g.edge(e).has_ann = true;
    }
};

inline OpenGraph translate_rec(Builder& b, const Term& t);

// Collects the k occurrence edges of x into a fresh con_k node; returns the
// con's output edge (dangling dst).
inline EdgeId gather_var(Builder& b, OpenGraph& gt, VarName x) {
    NodeId con = b.node(NodeKind::Con);
    auto it = gt.free.find(x);
    if (it != gt.free.end()) {
        for (EdgeId e : it->second) b.g.attach_bunch(e, con);
        gt.free.erase(it);
    }
    EdgeId out = b.edge();
    b.g.set_src(out, con, PortCls::POut, 0);
    b.annotate(out, x);
    return out;
}

inline void merge_free(OpenGraph& into, OpenGraph&& from) {
    for (auto& [x, es] : from.free) {
        auto& v = into.free[x];
        v.insert(v.end(), es.begin(), es.end());
    }
}

// Application scaffold shared by terms and contexts: given the function
// side's conclusion, wires ax/tensor/der/cut around an argument and returns
// the new conclusion.
inline EdgeId wire_application(Builder& b, EdgeId fun_conclusion, EdgeId arg_conclusion) {
    NodeId ax = b.node(NodeKind::Ax);
    NodeId tensor = b.node(NodeKind::Tensor);
    NodeId der = b.node(NodeKind::Der);
    NodeId cut = b.node(NodeKind::Cut);

    EdgeId conclusion = b.edge();
    b.g.set_src(conclusion, ax, PortCls::POut, 0);
    EdgeId result = b.edge();
    b.g.set_src(result, ax, PortCls::POut, 1);

    b.g.set_dst(arg_conclusion, tensor, PortCls::PIn, 0); // left premise
    b.g.set_dst(result, tensor, PortCls::PIn, 1);         // right premise
    EdgeId tens_out = b.edge();
    b.g.set_src(tens_out, tensor, PortCls::POut, 0);
    b.g.set_dst(tens_out, der, PortCls::PIn, 0);
    EdgeId der_out = b.edge();
    b.g.set_src(der_out, der, PortCls::POut, 0);
    b.g.set_dst(der_out, cut, PortCls::PIn, 0);
    b.g.set_dst(fun_conclusion, cut, PortCls::PIn, 1);
    return conclusion;
}

// Wraps an already-built body (its graph, conclusion and free edges) into a
// box: con_k for the bound variable, par, bang door, whynot doors for the
// remaining free edges.
inline OpenGraph wrap_box(Builder& b, OpenGraph&& body, VarName x, BoxId inner,
                          std::vector<NodeId>&& members) {
    Builder inner_b{b.g, inner};
    EdgeId con_out = gather_var(inner_b, body, x);
    NodeId par = inner_b.node(NodeKind::Par);
    b.g.set_dst(con_out, par, PortCls::PIn, 0);        // left: the variable side
    b.g.set_dst(body.conclusion, par, PortCls::PIn, 1); // right: the body result
    EdgeId par_out = inner_b.edge();
    b.g.set_src(par_out, par, PortCls::POut, 0);

    NodeId bang = b.node(NodeKind::Bang); // door lives at the outer level
    b.g.set_dst(par_out, bang, PortCls::PIn, 0);
    EdgeId conclusion = b.edge();
    b.g.set_src(conclusion, bang, PortCls::POut, 0);

    BoxRec& rec = b.g.box(inner);
    rec.principal = bang;
    rec.parent = b.level;
    rec.prov = b.g.next_prov++;
    (void)members;

    OpenGraph out;
    out.conclusion = conclusion;
    for (auto& [v, es] : body.free) {
        for (EdgeId e : es) {
            NodeId door = b.node(NodeKind::WhyNot);
            b.g.attach_bunch(e, door);
            EdgeId de = b.edge();
            b.g.set_src(de, door, PortCls::POut, 0);
            b.annotate(de, v);
            rec.aux.push_back(door);
            out.free[v].push_back(de);
        }
    }
    return out;
}

inline OpenGraph translate_rec(Builder& b, const Term& t) {
    switch (t->kind) {
        case TermNode::Var: {
            NodeId ax = b.node(NodeKind::Ax);
            OpenGraph out;
            out.conclusion = b.edge();
            b.g.set_src(out.conclusion, ax, PortCls::POut, 0);
            EdgeId occ = b.edge();
            b.g.set_src(occ, ax, PortCls::POut, 1);
            b.annotate(occ, t->var);
            out.free[t->var].push_back(occ);
            return out;
        }
        case TermNode::Abs: {
            b.g.boxes.push_back(BoxRec{});
            BoxId inner = static_cast<BoxId>(b.g.boxes.size() - 1);
            Builder body_b{b.g, inner};
            OpenGraph body = translate_rec(body_b, t->a);
            return wrap_box(b, std::move(body), t->var, inner, {});
        }
        case TermNode::App: {
            OpenGraph ft = translate_rec(b, t->a);
            OpenGraph ut = translate_rec(b, t->b);
            OpenGraph out;
            out.conclusion = wire_application(b, ft.conclusion, ut.conclusion);
            out.free = std::move(ft.free);
            merge_free(out, std::move(ut));
            return out;
        }
        case TermNode::Sub: {
            OpenGraph body = translate_rec(b, t->a);
            OpenGraph bound = translate_rec(b, t->b);
            EdgeId con_out = gather_var(b, body, t->var);
            NodeId cut = b.node(NodeKind::Cut);
            b.g.set_dst(con_out, cut, PortCls::PIn, 0);
            b.g.set_dst(bound.conclusion, cut, PortCls::PIn, 1);
            OpenGraph out;
            out.conclusion = body.conclusion;
            out.free = std::move(body.free);
            merge_free(out, std::move(bound));
            return out;
        }
    }
    throw TranslateError("translate: bad term");
}

} // namespace detail_tr

inline OpenGraph translate_term(Graph& g, const Term& t) {
    detail_tr::Builder b{g, kTopLevel};
    return detail_tr::translate_rec(b, t);
}

// ---- evaluation contexts ----

namespace detail_tr {

inline CtxGraph translate_ctx_rec(Builder& b, const EvalCtx& e, const VarMultiset& m);

// The hole interface of <> with multiset m: bare wires, one per conclusion
// and per variable occurrence.
inline CtxGraph hole_interface(Builder& b, const VarMultiset& m) {
    CtxGraph out;
    EdgeId wire = b.edge();
    out.conclusion = wire;
    out.hole_conclusion = wire;
    for (auto& [x, k] : m.items) {
        for (uint32_t i = 0; i < k; i++) {
            EdgeId w = b.edge();
            b.annotate(w, x);
            out.free[x].push_back(w);
            out.hole_free[x].push_back(w);
        }
    }
    return out;
}

inline CtxGraph translate_ctx_rec(Builder& b, const EvalCtx& e, const VarMultiset& m) {
    switch (e->kind) {
        case CtxNode::Hole:
            return hole_interface(b, m);
        case CtxNode::AppLeft: {
            CtxGraph ge = translate_ctx_rec(b, e->inner, m);
            OpenGraph gu = translate_rec(b, e->t);
            CtxGraph out;
            out.conclusion = wire_application(b, ge.conclusion, gu.conclusion);
            out.free = std::move(ge.free);
            for (auto& [x, es] : gu.free) {
                auto& v = out.free[x];
                v.insert(v.end(), es.begin(), es.end());
            }
            out.hole_conclusion = ge.hole_conclusion;
            out.hole_free = std::move(ge.hole_free);
            return out;
        }
        case CtxNode::SubOuter: {
            CtxGraph ge = translate_ctx_rec(b, e->inner, m);
            OpenGraph gu = translate_rec(b, e->t);
            // con over every x-annotated open edge of E (threaded hole wires
            // included), cut against the bound term
            NodeId con = b.node(NodeKind::Con);
            auto it = ge.free.find(e->var);
            if (it != ge.free.end()) {
                for (EdgeId ed : it->second) b.g.attach_bunch(ed, con);
                ge.free.erase(it);
            }
            EdgeId con_out = b.edge();
            b.g.set_src(con_out, con, PortCls::POut, 0);
            b.annotate(con_out, e->var);
            NodeId cut = b.node(NodeKind::Cut);
            b.g.set_dst(con_out, cut, PortCls::PIn, 0);
            b.g.set_dst(gu.conclusion, cut, PortCls::PIn, 1);

            CtxGraph out;
            out.conclusion = ge.conclusion;
            out.free = std::move(ge.free);
            for (auto& [x, es] : gu.free) {
                auto& v = out.free[x];
                v.insert(v.end(), es.begin(), es.end());
            }
            out.hole_conclusion = ge.hole_conclusion;
            out.hole_free = std::move(ge.hole_free);
            return out;
        }
        case CtxNode::Hered: {
            // E'<x>[x <- E]: translate E' with M = [x], plug the occurrence
            // ax into its hole, then bind all x edges against E's conclusion.
            CtxGraph gep = translate_ctx_rec(b, e->eprime, VarMultiset::singleton(e->var));

            NodeId ax = b.node(NodeKind::Ax);
            // occurrence conclusion feeds E' hole
            EdgeId occ_conc = b.edge();
            b.g.set_src(occ_conc, ax, PortCls::POut, 0);
            EdgeId hc = gep.hole_conclusion;
            // merge occ_conc into the interface wire
            b.g.merge_edges(occ_conc, hc);
            if (gep.conclusion == hc) gep.conclusion = occ_conc;
            for (auto& [x, es] : gep.free)
                for (auto& ed : es)
                    if (ed == hc) ed = occ_conc;
            EdgeId occ_free = b.edge();
            b.g.set_src(occ_free, ax, PortCls::POut, 1);
            b.annotate(occ_free, e->var);
            auto& hfx = gep.hole_free[e->var];
            if (hfx.size() != 1)
                throw TranslateError("hereditary context: expected one hole occurrence of the variable");
            EdgeId hw = hfx[0];
            b.g.merge_edges(occ_free, hw);
            for (auto& [x, es] : gep.free)
                for (auto& ed : es)
                    if (ed == hw) ed = occ_free;

            CtxGraph ge = translate_ctx_rec(b, e->inner, m);

            NodeId con = b.node(NodeKind::Con);
            auto it = gep.free.find(e->var);
            if (it != gep.free.end()) {
                for (EdgeId ed : it->second) b.g.attach_bunch(ed, con);
                gep.free.erase(it);
            }
            EdgeId con_out = b.edge();
            b.g.set_src(con_out, con, PortCls::POut, 0);
            b.annotate(con_out, e->var);
            NodeId cut = b.node(NodeKind::Cut);
            b.g.set_dst(con_out, cut, PortCls::PIn, 0);
            b.g.set_dst(ge.conclusion, cut, PortCls::PIn, 1);

            CtxGraph out;
            out.conclusion = gep.conclusion;
            out.free = std::move(gep.free);
            for (auto& [x, es] : ge.free) {
                auto& v = out.free[x];
                v.insert(v.end(), es.begin(), es.end());
            }
            out.hole_conclusion = ge.hole_conclusion;
            out.hole_free = std::move(ge.hole_free);
            return out;
        }
    }
    throw TranslateError("translate_ctx: bad context");
}

} // namespace detail_tr

inline CtxGraph translate_ctx(Graph& g, const EvalCtx& e, const VarMultiset& m) {
    detail_tr::Builder b{g, kTopLevel};
    return detail_tr::translate_ctx_rec(b, e, m);
}

// Splices a term translation into a context translation's hole interface.
// Occurrence edges are matched per variable, in order; a multiplicity
// mismatch is a caller bug.
inline OpenGraph compose(Graph& g, CtxGraph ctx, OpenGraph term) {
    EdgeId surv_conc = g.merge_edges(term.conclusion, ctx.hole_conclusion);
    auto fix = [&](EdgeId killed, EdgeId survivor) {
        if (ctx.conclusion == killed) ctx.conclusion = survivor;
        for (auto& [x, es] : ctx.free)
            for (auto& e : es)
                if (e == killed) e = survivor;
    };
    fix(ctx.hole_conclusion, surv_conc);

    for (auto& [x, wires] : ctx.hole_free) {
        auto it = term.free.find(x);
        size_t have = (it == term.free.end()) ? 0 : it->second.size();
        if (have != wires.size())
            throw TranslateError("compose: free-edge multiplicity mismatch for " + label_of(x));
        for (size_t i = 0; i < wires.size(); i++) {
            EdgeId surv = g.merge_edges(it->second[i], wires[i]);
            fix(wires[i], surv);
        }
    }
    for (auto& [x, es] : term.free) {
        (void)x;
        (void)es;
    }

    OpenGraph out;
    out.conclusion = ctx.conclusion;
    out.free = std::move(ctx.free);
    return out;
}

} // namespace goim

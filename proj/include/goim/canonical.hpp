#pragma once

// Canonical serialization of named well-boxed graphs. Two graphs produce the
// same string exactly when they are isomorphic respecting kinds, ports, box
// structure and the designated root; node names and edge annotations are
// ignored. Unordered premise bunches are ordered by probing each branch with
// a depth-first signature computed against the visited-set snapshot, so the
// result does not depend on representation order.

#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "graph.hpp"

namespace goim {

struct CanonicalResult {
    std::string form;
    std::vector<NodeId> unreachable; // live nodes not reachable from the root
};

namespace detail_canon {

struct Env {
    const Graph& g;
    std::unordered_map<NodeId, int>& real_n;
    std::unordered_map<EdgeId, int>* real_e; // null while probing
    int& ncounter;
    int& ecounter;
    bool probe = false;
    std::unordered_map<NodeId, int> local_n;
    int local_counter = 0;
};

inline char entry_tag(const Graph& g, const EndPt& p) {
    const Node& n = g.node(p.node);
    switch (n.kind) {
        case NodeKind::Ax: return 'c';
        case NodeKind::Cut: return 'p';
        case NodeKind::Tensor:
        case NodeKind::Par:
            if (p.cls == PortCls::POut) return 'c';
            return p.idx == 0 ? 'l' : 'r';
        case NodeKind::Bang:
        case NodeKind::Der:
            return p.cls == PortCls::POut ? 'o' : 'i';
        case NodeKind::Con:
        case NodeKind::WhyNot:
            return p.cls == PortCls::POut ? 'c' : 'p';
    }
    return '?';
}

void visit_node(Env& env, std::string& out, const EndPt& at);

inline void trav_edge(Env& env, std::string& out, EdgeId e, bool toward_dst) {
    if (!env.probe && env.real_e && !env.real_e->count(e)) (*env.real_e)[e] = env.ecounter++;
    const Edge& ed = env.g.edge(e);
    const EndPt& to = toward_dst ? ed.dst : ed.src;
    if (to.dangling()) {
        out += toward_dst ? 'o' : 'i'; // open outgoing / open incoming end
        return;
    }
    if (env.probe) {
        auto it = env.local_n.find(to.node);
        if (it != env.local_n.end()) {
            out += "@P" + std::to_string(it->second);
            out += entry_tag(env.g, to);
            return;
        }
    }
    auto it = env.real_n.find(to.node);
    if (it != env.real_n.end()) {
        out += "@" + std::to_string(it->second);
        out += entry_tag(env.g, to);
        return;
    }
    visit_node(env, out, to);
}

inline std::string probe_branch(Env& env, EdgeId e) {
    Env p{env.g, env.real_n, nullptr, env.ncounter, env.ecounter};
    p.probe = true;
    if (env.probe) p.local_n = env.local_n;
    std::string s;
    trav_edge(p, s, e, false);
    return s;
}

inline void sort_bunch(Env& env, std::vector<EdgeId>& es) {
    if (es.size() < 2) return;
    auto cheap = [&](EdgeId e) {
        const EndPt& s = env.g.edge(e).src;
        if (s.dangling()) return std::tuple<int, int, int>(-1, -1, -1);
        const Node& sn = env.g.node(s.node);
        int arity = sn.has_bunch() ? static_cast<int>(sn.bunch.size()) : 0;
        return std::tuple<int, int, int>(static_cast<int>(sn.kind), arity,
                                         static_cast<int>(env.g.box_depth(s.node)));
    };
    std::stable_sort(es.begin(), es.end(),
                     [&](EdgeId a, EdgeId b) { return cheap(a) < cheap(b); });
    // refine groups that the cheap key leaves ambiguous
    size_t i = 0;
    while (i < es.size()) {
        size_t j = i + 1;
        while (j < es.size() && cheap(es[i]) == cheap(es[j])) j++;
        if (j - i >= 2) {
            std::vector<std::pair<std::string, EdgeId>> keyed;
            for (size_t k = i; k < j; k++) keyed.push_back({probe_branch(env, es[k]), es[k]});
            std::stable_sort(keyed.begin(), keyed.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            for (size_t k = i; k < j; k++) es[k] = keyed[k - i].second;
        }
        i = j;
    }
}

inline void visit_node(Env& env, std::string& out, const EndPt& at) {
    const Graph& g = env.g;
    const Node& n = g.node(at.node);
    if (env.probe)
        env.local_n[at.node] = env.local_counter++;
    else
        env.real_n[at.node] = env.ncounter++;

    out += '(';
    out += kind_name(n.kind);
    if (n.kind == NodeKind::Con) out += std::to_string(n.bunch.size());
    out += '<';
    out += entry_tag(g, at);

    auto child = [&](char tag, EdgeId e, bool toward_dst) {
        out += ' ';
        out += tag;
        out += ':';
        trav_edge(env, out, e, toward_dst);
    };

    switch (n.kind) {
        case NodeKind::Ax:
            child('c', n.out[at.idx ^ 1], true);
            break;
        case NodeKind::Cut:
            child('p', n.fin[at.idx ^ 1], false);
            break;
        case NodeKind::Tensor:
        case NodeKind::Par:
            if (at.cls == PortCls::POut) {
                child('l', n.fin[0], false);
                child('r', n.fin[1], false);
            } else if (at.idx == 0) {
                child('r', n.fin[1], false);
                child('c', n.out[0], true);
            } else {
                child('l', n.fin[0], false);
                child('c', n.out[0], true);
            }
            break;
        case NodeKind::Bang:
        case NodeKind::Der:
            if (at.cls == PortCls::POut)
                child('i', n.fin[0], false);
            else
                child('o', n.out[0], true);
            break;
        case NodeKind::Con:
        case NodeKind::WhyNot: {
            std::vector<EdgeId> rest;
            for (uint16_t i = 0; i < n.bunch.size(); i++)
                if (!(at.cls == PortCls::PBunch && at.idx == i)) rest.push_back(n.bunch[i]);
            sort_bunch(env, rest);
            for (EdgeId e : rest) child('p', e, false);
            if (at.cls != PortCls::POut) child('c', n.out[0], true);
            break;
        }
    }
    out += ')';
}

// Entry for a component with no designated root: visits a node traversing
// every port in canonical order.
inline void visit_component_root(Env& env, std::string& out, NodeId nid) {
    const Node& n = env.g.node(nid);
    if (env.probe)
        env.local_n[nid] = env.local_counter++;
    else
        env.real_n[nid] = env.ncounter++;
    out += "(*";
    out += kind_name(n.kind);
    if (n.kind == NodeKind::Con) out += std::to_string(n.bunch.size());
    auto child = [&](char tag, EdgeId e, bool toward_dst) {
        out += ' ';
        out += tag;
        out += ':';
        trav_edge(env, out, e, toward_dst);
    };
    for (uint16_t i = 0; i < n.out_arity(); i++) child('c', n.out[i], true);
    for (uint16_t i = 0; i < n.fin_arity(); i++) child(i == 0 ? 'l' : 'r', n.fin[i], false);
    if (n.has_bunch()) {
        std::vector<EdgeId> es = n.bunch;
        sort_bunch(env, es);
        for (EdgeId e : es) child('p', e, false);
    }
    out += ')';
}

inline std::string box_table(const Graph& g, const std::unordered_map<NodeId, int>& nvis) {
    struct Row {
        int pidx;
        std::string body;
    };
    std::vector<Row> rows;
    for (size_t bi = 0; bi < g.boxes.size(); bi++) {
        const BoxRec& b = g.boxes[bi];
        if (!b.alive) continue;
        auto it = nvis.find(b.principal);
        if (it == nvis.end()) continue;
        std::string body = "{p=" + std::to_string(it->second);
        BoxId parent = b.parent;
        if (parent == kTopLevel)
            body += " up=-";
        else
            body += " up=" + std::to_string(nvis.at(g.box(parent).principal));
        std::vector<int> aux;
        for (NodeId w : b.aux) aux.push_back(nvis.at(w));
        std::sort(aux.begin(), aux.end());
        body += " aux=";
        for (int a : aux) body += std::to_string(a) + ",";
        std::vector<int> members;
        for (NodeId n = 0; n < g.nodes.size(); n++)
            if (g.nodes[n].alive && g.nodes[n].box == static_cast<BoxId>(bi)) {
                auto mi = nvis.find(n);
                if (mi == nvis.end()) return "{box-spans-components}";
                members.push_back(mi->second);
            }
        std::sort(members.begin(), members.end());
        body += " in=";
        for (int m : members) body += std::to_string(m) + ",";
        body += "}";
        rows.push_back({it->second, body});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.pidx < b.pidx; });
    std::string out;
    for (auto& r : rows) out += r.body;
    return out;
}

inline std::string canon_component(const Graph& g, const std::vector<NodeId>& comp) {
    // candidate starts: nodes of the minimal (kind, arity, depth) class
    auto key = [&](NodeId n) {
        const Node& nd = g.node(n);
        int arity = nd.has_bunch() ? static_cast<int>(nd.bunch.size()) : 0;
        return std::tuple<int, int, int>(static_cast<int>(nd.kind), arity,
                                         static_cast<int>(g.box_depth(n)));
    };
    std::tuple<int, int, int> best_key = key(comp[0]);
    for (NodeId n : comp) best_key = std::min(best_key, key(n));

    std::string best;
    bool first = true;
    for (NodeId n : comp) {
        if (key(n) != best_key) continue;
        std::unordered_map<NodeId, int> nvis;
        int nc = 0, ec = 0;
        Env env{g, nvis, nullptr, nc, ec};
        std::string s;
        visit_component_root(env, s, n);
        s += box_table(g, nvis);
        if (first || s < best) {
            best = s;
            first = false;
        }
    }
    return best;
}

} // namespace detail_canon

enum class TokenDir : uint8_t { Up, Down };

// root must be an open outgoing edge of g; the traversal enters against its
// direction, the way a token does.
inline CanonicalResult canonical_form(const Graph& g, EdgeId root,
                                      std::optional<std::pair<EdgeId, TokenDir>> token = {}) {
    using namespace detail_canon;
    CanonicalResult res;
    std::unordered_map<NodeId, int> nvis;
    std::unordered_map<EdgeId, int> evis;
    int nc = 0, ec = 0;
    Env env{g, nvis, &evis, nc, ec};

    std::string main = "R:";
    trav_edge(env, main, root, false);
    main += "|B:" + box_table(g, nvis);

    if (token) {
        auto it = evis.find(token->first);
        main += "|T:";
        main += (it == evis.end()) ? "?" : std::to_string(it->second);
        main += token->second == TokenDir::Down ? 'd' : 'u';
    }

    // weakly-connected components not reached from the root (dead bindings)
    std::vector<NodeId> rest;
    for (NodeId n = 0; n < g.nodes.size(); n++)
        if (g.nodes[n].alive && !nvis.count(n)) rest.push_back(n);
    res.unreachable = rest;

    std::unordered_map<NodeId, int> comp_of;
    std::vector<std::vector<NodeId>> comps;
    for (NodeId seed : rest) {
        if (comp_of.count(seed)) continue;
        std::vector<NodeId> comp, stack{seed};
        comp_of[seed] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            comp.push_back(n);
            const Node& nd = g.node(n);
            auto follow = [&](EdgeId e) {
                if (e == kNoEdge) return;
                const Edge& ed = g.edge(e);
                for (const EndPt* p : {&ed.src, &ed.dst}) {
                    if (p->dangling() || comp_of.count(p->node) || nvis.count(p->node)) continue;
                    comp_of[p->node] = static_cast<int>(comps.size());
                    stack.push_back(p->node);
                }
            };
            for (uint16_t i = 0; i < nd.out_arity(); i++) follow(nd.out[i]);
            for (uint16_t i = 0; i < nd.fin_arity(); i++) follow(nd.fin[i]);
            for (EdgeId e : nd.bunch) follow(e);
        }
        comps.push_back(std::move(comp));
    }

    std::vector<std::string> comp_strs;
    for (auto& c : comps) comp_strs.push_back(detail_canon::canon_component(g, c));
    std::sort(comp_strs.begin(), comp_strs.end());
    for (auto& s : comp_strs) main += "|C:" + s;

    res.form = std::move(main);
    return res;
}

} // namespace goim

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "names.hpp"

namespace goim {

// The eight generators. Con carries its in-degree as the size of its premise
// bunch; arity 0 is weakening.
enum class NodeKind : uint8_t { Ax, Cut, Tensor, Par, Bang, WhyNot, Der, Con };

inline const char* kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Ax: return "ax";
        case NodeKind::Cut: return "cut";
        case NodeKind::Tensor: return "tensor";
        case NodeKind::Par: return "par";
        case NodeKind::Bang: return "bang";
        case NodeKind::WhyNot: return "whynot";
        case NodeKind::Der: return "der";
        case NodeKind::Con: return "con";
    }
    return "?";
}

using NodeId = uint32_t;
using EdgeId = uint32_t;
using BoxId = int32_t; // -1 = top level

constexpr NodeId kNoNode = 0xffffffffu;
constexpr EdgeId kNoEdge = 0xffffffffu;
constexpr BoxId kTopLevel = -1;

// Port classes:
//   POut:   fixed conclusions (Ax has two, most nodes one, Cut none)
//   PIn:    fixed premises (Tensor/Par/Cut two — 0 = left, 1 = right;
//           Bang/Der one)
//   PBunch: variable premise bunch (Con, WhyNot)
enum class PortCls : uint8_t { POut, PIn, PBunch };

struct EndPt {
    NodeId node = kNoNode;
    PortCls cls = PortCls::POut;
    uint16_t idx = 0;

    bool dangling() const { return node == kNoNode; }
};

struct Edge {
    EndPt src, dst;
    bool alive = true;
    VarName ann{};      // variable annotation, debug only
    bool has_ann = false;
};

struct Node {
    NodeKind kind;
    uint64_t name = 0;
    BoxId box = kTopLevel; // innermost enclosing box
    bool alive = true;
    EdgeId out[2] = {kNoEdge, kNoEdge};
    EdgeId fin[2] = {kNoEdge, kNoEdge};
    std::vector<EdgeId> bunch;

    uint16_t out_arity() const {
        switch (kind) {
            case NodeKind::Ax: return 2;
            case NodeKind::Cut: return 0;
            default: return 1;
        }
    }
    uint16_t fin_arity() const {
        switch (kind) {
            case NodeKind::Tensor:
            case NodeKind::Par:
            case NodeKind::Cut: return 2;
            case NodeKind::Bang:
            case NodeKind::Der: return 1;
            default: return 0;
        }
    }
    bool has_bunch() const { return kind == NodeKind::Con || kind == NodeKind::WhyNot; }
};

struct BoxRec {
    NodeId principal = kNoNode;   // Bang node, lives at the parent level
    std::vector<NodeId> aux;      // WhyNot nodes, parent level
    BoxId parent = kTopLevel;
    uint32_t prov = 0;            // which box of the initial graph this copies
    bool alive = true;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Graph {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<BoxRec> boxes;
    uint64_t next_name = 0;
    uint32_t next_prov = 0;

    NodeId add_node(NodeKind k, BoxId box = kTopLevel) {
        nodes.push_back(Node{k, next_name++, box, true, {kNoEdge, kNoEdge}, {kNoEdge, kNoEdge}, {}});
        return static_cast<NodeId>(nodes.size() - 1);
    }

    EdgeId add_edge() {
        edges.push_back(Edge{});
        return static_cast<EdgeId>(edges.size() - 1);
    }

    Node& node(NodeId n) { return nodes[n]; }
    const Node& node(NodeId n) const { return nodes[n]; }
    Edge& edge(EdgeId e) { return edges[e]; }
    const Edge& edge(EdgeId e) const { return edges[e]; }
    BoxRec& box(BoxId b) { return boxes[static_cast<size_t>(b)]; }
    const BoxRec& box(BoxId b) const { return boxes[static_cast<size_t>(b)]; }

    EdgeId& slot(const EndPt& p) {
        Node& n = nodes[p.node];
        switch (p.cls) {
            case PortCls::POut: return n.out[p.idx];
            case PortCls::PIn: return n.fin[p.idx];
            case PortCls::PBunch: return n.bunch[p.idx];
        }
        throw std::logic_error("slot: bad port");
    }

    void set_src(EdgeId e, NodeId n, PortCls cls, uint16_t idx) {
        edges[e].src = {n, cls, idx};
        slot(edges[e].src) = e;
    }
    void set_dst(EdgeId e, NodeId n, PortCls cls, uint16_t idx) {
        edges[e].dst = {n, cls, idx};
        slot(edges[e].dst) = e;
    }

    // Appends a premise slot to a Con/WhyNot node and plugs e into it.
    void attach_bunch(EdgeId e, NodeId n) {
        Node& nd = nodes[n];
        nd.bunch.push_back(e);
        edges[e].dst = {n, PortCls::PBunch, static_cast<uint16_t>(nd.bunch.size() - 1)};
    }

    // Removes premise idx of a Con node; later premises shift down.
    void detach_bunch(NodeId n, uint16_t idx) {
        Node& nd = nodes[n];
        nd.bunch.erase(nd.bunch.begin() + idx);
        for (size_t i = idx; i < nd.bunch.size(); i++)
            edges[nd.bunch[i]].dst.idx = static_cast<uint16_t>(i);
    }

    // Merges two edges that meet at a node being deleted: `up` keeps its
    // source, takes over `down`'s destination. Returns the survivor (`up`).
    EdgeId merge_edges(EdgeId up, EdgeId down) {
        if (up == down) throw std::logic_error("merge_edges: same edge");
        Edge& u = edges[up];
        Edge& d = edges[down];
        u.dst = d.dst;
        if (!u.dst.dangling()) slot(u.dst) = up;
        if (!u.has_ann && d.has_ann) {
            u.ann = d.ann;
            u.has_ann = true;
        }
        d.alive = false;
        return up;
    }

    void kill_node(NodeId n) { nodes[n].alive = false; }

    uint64_t live_node_count() const {
        uint64_t c = 0;
        for (auto& n : nodes) c += n.alive ? 1 : 0;
        return c;
    }
    uint64_t live_edge_count() const {
        uint64_t c = 0;
        for (auto& e : edges) c += e.alive ? 1 : 0;
        return c;
    }

    bool in_box(NodeId n, BoxId b) const {
        BoxId cur = nodes[n].box;
        while (cur != kTopLevel) {
            if (cur == b) return true;
            cur = boxes[static_cast<size_t>(cur)].parent;
        }
        return false;
    }

    uint32_t box_depth(NodeId n) const {
        uint32_t d = 0;
        BoxId cur = nodes[n].box;
        while (cur != kTopLevel) {
            d++;
            cur = boxes[static_cast<size_t>(cur)].parent;
        }
        return d;
    }
};

// ---- well-boxedness ----

struct Violation {
    int clause; // 0 structural, 1 incoming, 2 box shape, 3 whynot, 4 nesting, 5 names
    std::string message;
    NodeId node = kNoNode;
};

inline std::optional<Violation> well_boxed_check(const Graph& g, bool allow_open_incoming = false) {
    // structural port consistency
    for (NodeId n = 0; n < g.nodes.size(); n++) {
        const Node& nd = g.nodes[n];
        if (!nd.alive) continue;
        auto check_slot = [&](EdgeId e, PortCls cls, uint16_t idx) -> bool {
            if (e == kNoEdge || e >= g.edges.size() || !g.edges[e].alive) return false;
            const Edge& ed = g.edges[e];
            const EndPt& p = (cls == PortCls::POut) ? ed.src : ed.dst;
            return p.node == n && p.cls == cls && p.idx == idx;
        };
        for (uint16_t i = 0; i < nd.out_arity(); i++)
            if (!check_slot(nd.out[i], PortCls::POut, i))
                return Violation{0, "bad out port wiring", n};
        for (uint16_t i = 0; i < nd.fin_arity(); i++)
            if (!check_slot(nd.fin[i], PortCls::PIn, i))
                return Violation{0, "bad in port wiring", n};
        if (nd.has_bunch()) {
            for (uint16_t i = 0; i < nd.bunch.size(); i++)
                if (!check_slot(nd.bunch[i], PortCls::PBunch, i))
                    return Violation{0, "bad bunch wiring", n};
            if (nd.kind == NodeKind::WhyNot && nd.bunch.empty())
                return Violation{0, "whynot door without premise", n};
        }
    }
    for (EdgeId e = 0; e < g.edges.size(); e++) {
        const Edge& ed = g.edges[e];
        if (!ed.alive) continue;
        if (!ed.src.dangling()) {
            if (!g.nodes[ed.src.node].alive) return Violation{0, "edge from dead node", ed.src.node};
        } else if (!allow_open_incoming) {
            return Violation{1, "open incoming edge", kNoNode};
        }
        if (!ed.dst.dangling() && !g.nodes[ed.dst.node].alive)
            return Violation{0, "edge into dead node", ed.dst.node};
    }

    // name uniqueness
    {
        std::unordered_set<uint64_t> seen;
        for (const Node& nd : g.nodes)
            if (nd.alive && !seen.insert(nd.name).second)
                return Violation{5, "duplicate node name", kNoNode};
    }

    // box conditions
    std::unordered_map<NodeId, int> door_of; // WhyNot -> #boxes listing it
    for (size_t bi = 0; bi < g.boxes.size(); bi++) {
        const BoxRec& b = g.boxes[bi];
        if (!b.alive) continue;
        BoxId bid = static_cast<BoxId>(bi);
        if (b.principal == kNoNode || !g.nodes[b.principal].alive ||
            g.nodes[b.principal].kind != NodeKind::Bang)
            return Violation{2, "box without live bang principal", b.principal};
        if (g.nodes[b.principal].box != b.parent)
            return Violation{4, "principal door at wrong nesting level", b.principal};
        for (NodeId w : b.aux) {
            if (!g.nodes[w].alive || g.nodes[w].kind != NodeKind::WhyNot)
                return Violation{2, "aux door is not a live whynot", w};
            if (g.nodes[w].box != b.parent)
                return Violation{4, "aux door at wrong nesting level", w};
            door_of[w]++;
        }

        // outgoing edges of the contents must hit exactly the doors
        bool principal_fed = false;
        std::unordered_set<NodeId> auxset(b.aux.begin(), b.aux.end());
        uint64_t members = 0;
        for (NodeId n = 0; n < g.nodes.size(); n++) {
            const Node& nd = g.nodes[n];
            if (!nd.alive || !g.in_box(n, bid)) continue;
            members++;
            for (uint16_t i = 0; i < nd.out_arity(); i++) {
                const Edge& ed = g.edges[nd.out[i]];
                bool leaves = ed.dst.dangling() || !g.in_box(ed.dst.node, bid);
                if (!leaves) continue;
                if (ed.dst.dangling())
                    return Violation{2, "box content with dangling conclusion", n};
                NodeId tgt = ed.dst.node;
                if (tgt == b.principal) {
                    if (principal_fed) return Violation{2, "two edges into principal door", tgt};
                    principal_fed = true;
                } else if (!auxset.count(tgt)) {
                    return Violation{2, "content edge escapes box without a door", n};
                }
            }
            // no edges may enter the box from outside
            for (uint16_t i = 0; i < nd.fin_arity(); i++) {
                const Edge& ed = g.edges[nd.fin[i]];
                if (ed.src.dangling() || !g.in_box(ed.src.node, bid))
                    return Violation{2, "edge enters box from outside", n};
            }
            if (nd.has_bunch())
                for (EdgeId e : nd.bunch) {
                    const Edge& ed = g.edges[e];
                    if (ed.src.dangling() || !g.in_box(ed.src.node, bid))
                        return Violation{2, "edge enters box from outside", n};
                }
        }
        if (members == 0) return Violation{2, "empty box", b.principal};
        if (!principal_fed) return Violation{2, "principal door not fed by contents", b.principal};
        // aux doors are fed from inside only
        for (NodeId w : b.aux)
            for (EdgeId e : g.nodes[w].bunch) {
                const Edge& ed = g.edges[e];
                if (ed.src.dangling() || !g.in_box(ed.src.node, bid))
                    return Violation{2, "aux door fed from outside its box", w};
            }
    }

    // every live WhyNot is the aux door of exactly one box
    for (NodeId n = 0; n < g.nodes.size(); n++) {
        const Node& nd = g.nodes[n];
        if (!nd.alive || nd.kind != NodeKind::WhyNot) continue;
        auto it = door_of.find(n);
        if (it == door_of.end() || it->second != 1)
            return Violation{3, "whynot is not the aux door of exactly one box", n};
    }
    // every live Bang is the principal of exactly one box
    {
        std::unordered_map<NodeId, int> prin;
        for (size_t bi = 0; bi < g.boxes.size(); bi++)
            if (g.boxes[bi].alive) prin[g.boxes[bi].principal]++;
        for (NodeId n = 0; n < g.nodes.size(); n++) {
            const Node& nd = g.nodes[n];
            if (!nd.alive || nd.kind != NodeKind::Bang) continue;
            auto it = prin.find(n);
            if (it == prin.end() || it->second != 1)
                return Violation{2, "bang is not the principal of exactly one box", n};
        }
    }

    // box tree acyclic
    for (size_t bi = 0; bi < g.boxes.size(); bi++) {
        if (!g.boxes[bi].alive) continue;
        BoxId cur = g.boxes[bi].parent;
        size_t hops = 0;
        while (cur != kTopLevel) {
            if (++hops > g.boxes.size()) return Violation{4, "box nesting cycle", kNoNode};
            cur = g.boxes[static_cast<size_t>(cur)].parent;
        }
    }

    // edge count is linear in node count: every live edge has a unique source
    // port, and out-degrees are fixed (at most 2 per node)
    if (!allow_open_incoming) {
        uint64_t ecount = g.live_edge_count();
        if (ecount > 2 * g.live_node_count() + 1)
            return Violation{0, "edge count not linear in node count", kNoNode};
    }

    return std::nullopt;
}

// ---- box copy / open ----

struct BoxCopy {
    BoxId box = kTopLevel;
    std::unordered_map<NodeId, NodeId> node_map;     // original -> copy (incl. doors)
    std::vector<std::pair<NodeId, NodeId>> doors;    // (aux, aux copy), in door order
    NodeId principal_copy = kNoNode;
    uint64_t nodes_copied = 0; // contents, excluding doors
    uint64_t doors_copied = 0; // principal + aux copies
};

// Disjoint copy of a box, its contents (nested boxes included) and its doors,
// all with fresh names. The copy's conclusion and aux outputs are left open.
inline BoxCopy copy_box(Graph& g, BoxId b) {
    BoxCopy r;
    const BoxRec brec = g.box(b);

    std::vector<NodeId> originals;
    for (NodeId n = 0; n < g.nodes.size(); n++)
        if (g.nodes[n].alive && g.in_box(n, b)) originals.push_back(n);

    std::vector<BoxId> boxes_inside;
    for (size_t bi = 0; bi < g.boxes.size(); bi++) {
        if (!g.boxes[bi].alive) continue;
        BoxId cur = static_cast<BoxId>(bi);
        for (BoxId p = cur; p != kTopLevel; p = g.box(p).parent)
            if (p == b) {
                boxes_inside.push_back(cur);
                break;
            }
    }

    std::unordered_map<BoxId, BoxId> box_map;
    for (BoxId ob : boxes_inside) {
        BoxRec nb;
        nb.prov = g.box(ob).prov;
        g.boxes.push_back(nb);
        box_map[ob] = static_cast<BoxId>(g.boxes.size() - 1);
    }
    for (BoxId ob : boxes_inside) {
        BoxId parent = g.box(ob).parent;
        g.box(box_map[ob]).parent = (parent == b || box_map.count(parent))
                                        ? (parent == b ? box_map[b] : box_map[parent])
                                        : parent;
    }
    r.box = box_map[b];
    g.box(r.box).parent = brec.parent;

    auto copy_node = [&](NodeId n) {
        const Node& src = g.nodes[n];
        BoxId nb = box_map.count(src.box) ? box_map[src.box] : src.box;
        NodeId c = g.add_node(src.kind, nb);
        r.node_map[n] = c;
        return c;
    };
    for (NodeId n : originals) {
        copy_node(n);
        r.nodes_copied++;
    }
    r.principal_copy = copy_node(brec.principal);
    r.doors_copied++;
    for (NodeId w : brec.aux) {
        NodeId c = copy_node(w);
        r.doors.push_back({w, c});
        r.doors_copied++;
    }

    // principal / aux lists of the copied boxes
    for (BoxId ob : boxes_inside) {
        const BoxRec& orec = g.box(ob);
        BoxRec& crec = g.box(box_map[ob]);
        if (ob == b) {
            crec.principal = r.principal_copy;
            for (auto& d : r.doors) crec.aux.push_back(d.second);
        } else {
            crec.principal = r.node_map.at(orec.principal);
            for (NodeId w : orec.aux) crec.aux.push_back(r.node_map.at(w));
        }
    }

    // internal edges (both endpoints among the copied nodes)
    std::unordered_map<EdgeId, EdgeId> edge_map;
    const EdgeId pre_existing = static_cast<EdgeId>(g.edges.size());
    for (EdgeId e = 0; e < pre_existing; e++) {
        const Edge& ed = g.edges[e];
        if (!ed.alive || ed.src.dangling()) continue;
        if (!r.node_map.count(ed.src.node)) continue;
        if (ed.dst.dangling()) throw GraphError("copy_box: dangling edge inside box");
        if (!r.node_map.count(ed.dst.node)) continue; // door output, stays outside
        EdgeId c = g.add_edge();
        g.edges[c].ann = g.edges[e].ann;
        g.edges[c].has_ann = g.edges[e].has_ann;
        edge_map[e] = c;
    }
    for (auto [e, c] : edge_map) {
        const EndPt s = g.edges[e].src;
        const EndPt d = g.edges[e].dst;
        g.set_src(c, r.node_map.at(s.node), s.cls, s.idx);
        if (d.cls == PortCls::PBunch)
            g.edges[c].dst = {r.node_map.at(d.node), PortCls::PBunch, d.idx};
        else
            g.set_dst(c, r.node_map.at(d.node), d.cls, d.idx);
    }
    // premise bunches, in the original order
    for (auto& [orig, copy] : r.node_map) {
        const Node& o = g.nodes[orig];
        if (!o.has_bunch()) continue;
        Node& c = g.nodes[copy];
        c.bunch.clear();
        for (EdgeId e : o.bunch) c.bunch.push_back(edge_map.at(e));
        for (uint16_t i = 0; i < c.bunch.size(); i++)
            g.edges[c.bunch[i]].dst = {copy, PortCls::PBunch, i};
    }

    // fresh open outputs for the copied doors
    {
        EdgeId conc = g.add_edge();
        g.set_src(conc, r.principal_copy, PortCls::POut, 0);
        for (auto& d : r.doors) {
            EdgeId e = g.add_edge();
            g.set_src(e, d.second, PortCls::POut, 0);
        }
    }
    return r;
}

struct OpenResult {
    std::vector<std::pair<EdgeId, EdgeId>> merges; // (killed, survivor)
    uint64_t doors_deleted = 0;
};

// Deletes the principal and auxiliary doors of a box, splicing each door's
// premise to its output; contents move to the enclosing box.
inline OpenResult open_box(Graph& g, BoxId b) {
    OpenResult r;
    BoxRec brec = g.box(b);

    auto splice_through = [&](NodeId door, EdgeId in, EdgeId out) {
        EdgeId survivor = g.merge_edges(in, out);
        r.merges.push_back({out, survivor});
        g.kill_node(door);
        r.doors_deleted++;
    };

    const Node& p = g.nodes[brec.principal];
    splice_through(brec.principal, p.fin[0], p.out[0]);
    for (NodeId w : brec.aux) {
        const Node& wn = g.nodes[w];
        if (wn.bunch.size() != 1)
            throw GraphError("open_box: aux door premise bunch is not a single edge");
        splice_through(w, wn.bunch[0], wn.out[0]);
    }

    for (NodeId n = 0; n < g.nodes.size(); n++)
        if (g.nodes[n].alive && g.nodes[n].box == b) g.nodes[n].box = brec.parent;
    for (size_t bi = 0; bi < g.boxes.size(); bi++)
        if (g.boxes[bi].alive && g.boxes[bi].parent == b)
            g.boxes[bi].parent = brec.parent;
    g.box(b).alive = false;
    return r;
}

} // namespace goim
